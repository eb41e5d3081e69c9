/** Types mirroring the server's scene, diff and CPT documents. */

export interface SceneSlice {
  valueIndex: number;
  value: string;
  startAngle: number; // degrees clockwise from 12 o'clock
  sweepAngle: number;
  color: string;
}

export interface SceneGlyph {
  name: string;
  label: string;
  x: number;
  y: number;
  radius: number;
  full: boolean;
  dimmed: boolean;
  innerSlices: SceneSlice[] | null;
  ringSlices: SceneSlice[] | null;
  innerStroke: boolean;
  ringStroke: boolean;
}

export interface SceneEdge {
  parent: string;
  child: string;
  x1: number;
  y1: number;
  x2: number;
  y2: number;
  style: 'solid' | 'dotted';
  lengthClass: 'normal' | 'shortened';
}

export interface LegendValue {
  value: string;
  color: string;
}

export interface SceneLegendRow {
  abbreviation: string;
  name: string;
  values: LegendValue[];
}

export interface SceneDocument {
  threshold: number;
  e2Active: boolean;
  glyphs: SceneGlyph[];
  edges: SceneEdge[];
  legend: SceneLegendRow[];
}

export interface SessionSummary {
  id: string;
  e1: Record<string, string>;
  e2: Record<string, string>;
  threshold: number;
  eligibleCount: number;
  retained: string[];
  ranking: { name: string; relevance: number }[];
}

export interface DiffReport {
  e1: Record<string, string>;
  e2: Record<string, string>;
  perVariable: { name: string; p1: number[]; p2: number[]; relevance: number }[];
  ranking: string[];
  retained: string[];
  threshold: number;
}

export interface CptHeaderEntry {
  parentAbbreviation: string;
  parentName: string;
  value: string;
  color: string;
}

export interface CptDensity {
  value: string;
  color: string;
  probability: number;
}

export interface CptBlock {
  rowIndex: number;
  header: CptHeaderEntry[];
  densities: CptDensity[];
}

export interface CptPanel {
  variable: string;
  abbreviation: string;
  blocks: CptBlock[];
}

export interface NetworkDocument {
  version: number;
  spaces: { id: string; kind: string; values: string[] }[];
  variables: { name: string; space: string }[];
  edges: [string, string][];
  cpts: Record<string, { parents: string[]; rows: number[][] }>;
}

/** Shallow structural check so a malformed payload fails fast with a
 * banner instead of half-rendering. */
export function isSceneDocument(value: unknown): value is SceneDocument {
  if (typeof value !== 'object' || value === null) return false;
  const doc = value as Record<string, unknown>;
  return (
    typeof doc.threshold === 'number' &&
    typeof doc.e2Active === 'boolean' &&
    Array.isArray(doc.glyphs) &&
    Array.isArray(doc.edges) &&
    Array.isArray(doc.legend) &&
    (doc.glyphs as unknown[]).every((g) => {
      const glyph = g as Record<string, unknown>;
      return (
        typeof glyph.name === 'string' &&
        typeof glyph.x === 'number' &&
        typeof glyph.y === 'number' &&
        typeof glyph.radius === 'number' &&
        typeof glyph.full === 'boolean'
      );
    })
  );
}
