/** UI state and small helpers. The scene always mirrors the server's last
 * acknowledged response; there is no optimistic rendering. */

import type { SceneDocument, SessionSummary } from './scene.js';

export interface Viewport {
  x: number;
  y: number;
  scale: number;
}

export interface UiState {
  sessionId: string | null;
  scene: SceneDocument | null;
  e1: Record<string, string>;
  e2: Record<string, string>;
  threshold: number;
  targetSet: 1 | 2;
  selected: string | null;
  viewport: Viewport;
  error: string | null;
}

export function initialState(): UiState {
  return {
    sessionId: null,
    scene: null,
    e1: {},
    e2: {},
    threshold: 100,
    targetSet: 2,
    selected: null,
    viewport: { x: 0, y: 0, scale: 1 },
    error: null,
  };
}

export function applySummary(state: UiState, summary: SessionSummary): void {
  state.e1 = summary.e1;
  state.e2 = summary.e2;
  state.threshold = summary.threshold;
}

/** Trailing-edge debounce; used for slider-driven threshold updates. */
export function debounce<A extends unknown[]>(
  fn: (...args: A) => void,
  waitMs: number,
): (...args: A) => void {
  let timer: ReturnType<typeof setTimeout> | undefined;
  return (...args: A) => {
    if (timer !== undefined) clearTimeout(timer);
    timer = setTimeout(() => fn(...args), waitMs);
  };
}

export function countFullGlyphs(scene: SceneDocument): number {
  return scene.glyphs.filter((g) => g.full).length;
}
