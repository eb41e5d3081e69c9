/** Pure scene-to-element rendering.
 *
 * Produces plain element descriptors so geometry is testable without a DOM;
 * `materialize` turns a descriptor tree into real SVG elements. All angles
 * come verbatim from the server scene (the UI never recomputes masses) and
 * every slice element carries its angles in data attributes.
 */

import type { SceneDocument, SceneEdge, SceneGlyph, SceneSlice } from './scene.js';

// Ring and stroke proportions, matching the service's SVG renderer.
export const RING_INNER = 1.1;
export const RING_OUTER = 1.35;
export const EVIDENCE_STROKE = 0.12;
export const DIM_OPACITY = 0.3;
export const SHORTEN_FACTOR = 0.5;

const EDGE_COLOR = '#8A8A8A';
const HAIRLINE_COLOR = '#D0D0D0';
const COLLAPSED_FILL = '#C0C0C0';

export interface El {
  tag: string;
  attrs: Record<string, string>;
  children: El[];
  text?: string;
}

function el(tag: string, attrs: Record<string, string>, children: El[] = [], text?: string): El {
  return { tag, attrs, children, text };
}

/** Point at `angle` degrees clockwise from 12 o'clock (screen coordinates). */
export function polar(cx: number, cy: number, r: number, angle: number): [number, number] {
  const theta = (angle * Math.PI) / 180;
  return [cx + r * Math.sin(theta), cy - r * Math.cos(theta)];
}

export function pieSlicePath(cx: number, cy: number, r: number, s: SceneSlice): string {
  const [x0, y0] = polar(cx, cy, r, s.startAngle);
  const [x1, y1] = polar(cx, cy, r, s.startAngle + s.sweepAngle);
  const large = s.sweepAngle > 180 ? 1 : 0;
  return `M ${cx},${cy} L ${x0},${y0} A ${r},${r} 0 ${large} 1 ${x1},${y1} Z`;
}

export function ringSlicePath(
  cx: number,
  cy: number,
  inner: number,
  outer: number,
  s: SceneSlice,
): string {
  const a0 = s.startAngle;
  const a1 = s.startAngle + s.sweepAngle;
  const [ox0, oy0] = polar(cx, cy, outer, a0);
  const [ox1, oy1] = polar(cx, cy, outer, a1);
  const [ix0, iy0] = polar(cx, cy, inner, a0);
  const [ix1, iy1] = polar(cx, cy, inner, a1);
  const large = s.sweepAngle > 180 ? 1 : 0;
  return (
    `M ${ox0},${oy0} A ${outer},${outer} 0 ${large} 1 ${ox1},${oy1} ` +
    `L ${ix1},${iy1} A ${inner},${inner} 0 ${large} 0 ${ix0},${iy0} Z`
  );
}

function circle(cx: number, cy: number, r: number, attrs: Record<string, string>): El {
  return el('circle', { cx: String(cx), cy: String(cy), r: String(r), ...attrs });
}

function sliceAttrs(s: SceneSlice): Record<string, string> {
  return {
    'data-value': s.value,
    'data-start': String(s.startAngle),
    'data-sweep': String(s.sweepAngle),
  };
}

function chartElements(
  g: SceneGlyph,
  slices: SceneSlice[],
  ring: boolean,
): El[] {
  const live = slices.filter((s) => s.sweepAngle > 0);
  const inner = g.radius * RING_INNER;
  const outer = g.radius * RING_OUTER;
  if (live.length === 1 && Math.abs(live[0].sweepAngle - 360) < 1e-9) {
    const s = live[0];
    if (ring) {
      return [
        circle(g.x, g.y, (inner + outer) / 2, {
          fill: 'none',
          stroke: s.color,
          'stroke-width': String(outer - inner),
          class: 'ring-slice',
          ...sliceAttrs(s),
        }),
      ];
    }
    return [circle(g.x, g.y, g.radius, { fill: s.color, class: 'pie-slice', ...sliceAttrs(s) })];
  }
  return live.map((s) =>
    el('path', {
      d: ring ? ringSlicePath(g.x, g.y, inner, outer, s) : pieSlicePath(g.x, g.y, g.radius, s),
      fill: s.color,
      class: ring ? 'ring-slice' : 'pie-slice',
      ...sliceAttrs(s),
    }),
  );
}

export function glyphElements(g: SceneGlyph): El {
  const attrs: Record<string, string> = {
    class: `variable ${g.full ? 'glyph-full' : 'glyph-collapsed'}`,
    'data-name': g.name,
  };
  if (g.dimmed) attrs.opacity = String(DIM_OPACITY);
  const children: El[] = [];

  if (!g.full) {
    children.push(circle(g.x, g.y, g.radius, { fill: COLLAPSED_FILL }));
    children.push(labelElement(g, g.radius * 0.9));
    return el('g', attrs, children);
  }

  children.push(...chartElements(g, g.innerSlices ?? [], false));
  children.push(
    g.innerStroke
      ? circle(g.x, g.y, g.radius, {
          fill: 'none',
          stroke: '#000000',
          'stroke-width': String(g.radius * EVIDENCE_STROKE),
          class: 'inner-stroke',
        })
      : circle(g.x, g.y, g.radius, {
          fill: 'none',
          stroke: HAIRLINE_COLOR,
          'stroke-width': '1',
          class: 'hairline',
        }),
  );
  if (g.ringSlices !== null) {
    children.push(...chartElements(g, g.ringSlices, true));
    if (g.ringStroke) {
      const width = String(g.radius * EVIDENCE_STROKE * 0.75);
      children.push(
        circle(g.x, g.y, g.radius * RING_OUTER, {
          fill: 'none',
          stroke: '#000000',
          'stroke-width': width,
          class: 'ring-stroke',
        }),
        circle(g.x, g.y, g.radius * RING_INNER, {
          fill: 'none',
          stroke: '#000000',
          'stroke-width': width,
          class: 'ring-stroke',
        }),
      );
    }
  }
  children.push(labelElement(g, g.radius * 0.85));
  return el('g', attrs, children);
}

function labelElement(g: SceneGlyph, size: number): El {
  const letter = g.label.replace(/\d+$/, '');
  const suffix = g.label.slice(letter.length);
  const text = el(
    'text',
    {
      x: String(g.x),
      y: String(g.y),
      'text-anchor': 'middle',
      'dominant-baseline': 'central',
      'font-family': 'Helvetica, Arial, sans-serif',
      'font-size': String(size),
      fill: '#222222',
      class: 'glyph-label',
    },
    [],
    suffix ? undefined : letter,
  );
  if (suffix) {
    text.children.push(el('tspan', {}, [], letter));
    text.children.push(
      el('tspan', { 'font-size': String(size * 0.65), 'baseline-shift': 'sub' }, [], suffix),
    );
  }
  return text;
}

export function edgeElement(
  edge: SceneEdge,
  glyphByName: Map<string, SceneGlyph>,
): El | null {
  const parent = glyphByName.get(edge.parent);
  const child = glyphByName.get(edge.child);
  if (!parent || !child) return null;
  const dx = edge.x2 - edge.x1;
  const dy = edge.y2 - edge.y1;
  const length = Math.hypot(dx, dy);
  if (length === 0) return null;
  const ux = dx / length;
  const uy = dy / length;
  const reach = (g: SceneGlyph) => g.radius * (g.ringSlices !== null ? RING_OUTER : 1) + 2;
  let x1 = edge.x1 + ux * reach(parent);
  let y1 = edge.y1 + uy * reach(parent);
  let x2 = edge.x2 - ux * reach(child);
  let y2 = edge.y2 - uy * reach(child);
  if (edge.lengthClass === 'shortened') {
    const trim = SHORTEN_FACTOR / 2;
    const nx1 = x1 + (x2 - x1) * trim;
    const ny1 = y1 + (y2 - y1) * trim;
    x2 = x2 - (x2 - x1) * trim;
    y2 = y2 - (y2 - y1) * trim;
    x1 = nx1;
    y1 = ny1;
  }
  const attrs: Record<string, string> = {
    class: `edge edge-${edge.style} edge-${edge.lengthClass}`,
    x1: String(x1),
    y1: String(y1),
    x2: String(x2),
    y2: String(y2),
    stroke: EDGE_COLOR,
    'stroke-width': '1.5',
    'marker-end': 'url(#arrow)',
  };
  if (edge.style === 'dotted') attrs['stroke-dasharray'] = '4,4';
  return el('line', attrs);
}

/** Whole structural view as one group (edges under glyphs). */
export function sceneElements(scene: SceneDocument): El {
  const glyphByName = new Map(scene.glyphs.map((g) => [g.name, g]));
  const children: El[] = [];
  for (const edge of scene.edges) {
    const line = edgeElement(edge, glyphByName);
    if (line) children.push(line);
  }
  for (const glyph of scene.glyphs) {
    children.push(glyphElements(glyph));
  }
  return el('g', { class: 'structure' }, children);
}

export function sceneBounds(scene: SceneDocument): { width: number; height: number } {
  let width = 100;
  let height = 100;
  for (const g of scene.glyphs) {
    width = Math.max(width, g.x + g.radius * RING_OUTER + 20);
    height = Math.max(height, g.y + g.radius * RING_OUTER + 20);
  }
  return { width, height };
}

const SVG_NS = 'http://www.w3.org/2000/svg';

export function materialize(doc: Document, descriptor: El): Element {
  const node = doc.createElementNS(SVG_NS, descriptor.tag);
  for (const [key, value] of Object.entries(descriptor.attrs)) {
    node.setAttribute(key, value);
  }
  if (descriptor.text !== undefined) node.textContent = descriptor.text;
  for (const child of descriptor.children) {
    node.appendChild(materialize(doc, child));
  }
  return node;
}

/** Legend view as HTML (the right-hand scrollable panel). */
export function legendHtml(scene: SceneDocument): string {
  const rows = scene.legend
    .map((row) => {
      const swatches = row.values
        .map(
          (v) =>
            `<span class="legend-value"><span class="swatch" style="background:${v.color}"></span>${escapeHtml(v.value)}</span>`,
        )
        .join('');
      return (
        `<div class="legend-row" data-name="${escapeHtml(row.name)}">` +
        `<span class="legend-abbrev">${formatAbbrev(row.abbreviation)}</span>` +
        `<span class="legend-name">${escapeHtml(row.name)}</span>` +
        `<span class="legend-values">${swatches}</span></div>`
      );
    })
    .join('');
  return rows || '<div class="legend-empty">No variables retained.</div>';
}

export function formatAbbrev(abbrev: string): string {
  const letter = abbrev.replace(/\d+$/, '');
  const suffix = abbrev.slice(letter.length);
  return suffix ? `${escapeHtml(letter)}<sub>${escapeHtml(suffix)}</sub>` : escapeHtml(letter);
}

export function escapeHtml(text: string): string {
  return text
    .replaceAll('&', '&amp;')
    .replaceAll('<', '&lt;')
    .replaceAll('>', '&gt;')
    .replaceAll('"', '&quot;');
}
