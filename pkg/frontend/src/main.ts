/** Browser app: session bootstrap, structural/legend panes, evidence picker,
 * threshold slider, pan/zoom. All probabilities, angles and retained sets
 * come from the server; after every acknowledged mutation the scene is
 * re-fetched so the display always equals the server's answer. */

import { ApiError, Client } from './api.js';
import {
  escapeHtml,
  formatAbbrev,
  legendHtml,
  materialize,
  sceneBounds,
  sceneElements,
} from './render.js';
import type { CptPanel } from './scene.js';
import { isSceneDocument } from './scene.js';
import { applySummary, countFullGlyphs, debounce, initialState } from './state.js';

const state = initialState();
const client = new Client('');

let lastFailed: (() => Promise<void>) | null = null;

function $(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node;
}

function showError(message: string, retry: (() => Promise<void>) | null): void {
  state.error = message;
  lastFailed = retry;
  const banner = $('error-banner');
  banner.innerHTML =
    `<span>${escapeHtml(message)}</span>` +
    (retry ? '<button id="retry-button">Retry</button>' : '') +
    '<button id="dismiss-button">Dismiss</button>';
  banner.hidden = false;
  document.getElementById('retry-button')?.addEventListener('click', () => {
    clearError();
    retry?.().catch(reportError);
  });
  document.getElementById('dismiss-button')?.addEventListener('click', clearError);
}

function clearError(): void {
  state.error = null;
  $('error-banner').hidden = true;
}

function reportError(error: unknown): void {
  const message =
    error instanceof ApiError
      ? `Server rejected the request (${error.status}): ${error.message}`
      : error instanceof TypeError
        ? `Network failure: ${error.message}`
        : String(error);
  showError(message, error instanceof TypeError ? lastFailed : null);
}

async function refreshScene(): Promise<void> {
  if (!state.sessionId) return;
  const scene = await client.getScene(state.sessionId);
  if (!isSceneDocument(scene)) {
    showError('Server returned a malformed scene; keeping the previous view.', null);
    return;
  }
  state.scene = scene;
  renderScene();
}

function renderScene(): void {
  const scene = state.scene;
  if (!scene) return;
  const svg = $('structure-svg') as unknown as SVGSVGElement;
  const { width, height } = sceneBounds(scene);
  svg.setAttribute('viewBox', `0 0 ${width} ${height}`);
  const layer = $('scene-layer');
  layer.replaceChildren(materialize(document, sceneElements(scene)));
  applyViewport();
  $('legend-body').innerHTML = legendHtml(scene);
  $('glyph-count').textContent =
    `${countFullGlyphs(scene)} of ${scene.glyphs.length} variables at full detail`;
  const slider = $('threshold-slider') as HTMLInputElement;
  slider.value = String(scene.threshold);
  $('threshold-value').textContent = `${scene.threshold}%`;

  for (const group of layer.querySelectorAll('g.variable')) {
    group.addEventListener('click', () => {
      const name = group.getAttribute('data-name');
      if (name) selectVariable(name).catch(reportError);
    });
  }
}

function applyViewport(): void {
  const { x, y, scale } = state.viewport;
  $('scene-layer').setAttribute('transform', `translate(${x},${y}) scale(${scale})`);
}

async function selectVariable(name: string): Promise<void> {
  if (!state.sessionId) return;
  state.selected = name;
  const panel = await client.getCpt(state.sessionId, name);
  renderPicker(panel);
  renderCpt(panel);
}

function renderPicker(panel: CptPanel): void {
  const holder = $('picker');
  const values = panel.blocks[0]?.densities ?? [];
  const target = state.targetSet;
  const current = (target === 1 ? state.e1 : state.e2)[panel.variable];
  holder.innerHTML =
    `<h3>${formatAbbrev(panel.abbreviation)} — ${escapeHtml(panel.variable)}</h3>` +
    `<p>Set value in evidence set ${target}:</p>` +
    values
      .map(
        (v) =>
          `<button class="value-button${v.value === current ? ' active' : ''}" data-value="${escapeHtml(v.value)}">` +
          `<span class="swatch" style="background:${v.color}"></span>${escapeHtml(v.value)}</button>`,
      )
      .join('') +
    `<button class="value-button clear" data-clear="1">Clear</button>`;
  for (const button of holder.querySelectorAll('button.value-button')) {
    button.addEventListener('click', () => {
      const value = button.getAttribute('data-value');
      setEvidence(panel.variable, button.hasAttribute('data-clear') ? null : value).catch(
        reportError,
      );
    });
  }
}

function renderCpt(panel: CptPanel): void {
  const holder = $('cpt-body');
  holder.innerHTML = panel.blocks
    .map((block) => {
      const header = block.header.length
        ? `<div class="cpt-header">${block.header
            .map(
              (h) =>
                `<span><span class="swatch" style="background:${h.color}"></span>` +
                `${formatAbbrev(h.parentAbbreviation)} = ${escapeHtml(h.value)}</span>`,
            )
            .join(' ')}</div>`
        : '';
      const rows = block.densities
        .map(
          (d) =>
            `<div class="cpt-density"><span class="swatch" style="background:${d.color}"></span>` +
            `<span class="cpt-value">${escapeHtml(d.value)}</span>` +
            `<span class="cpt-prob">${d.probability.toFixed(4)}</span></div>`,
        )
        .join('');
      return `<div class="cpt-block">${header}${rows}</div>`;
    })
    .join('');
}

async function setEvidence(variable: string, value: string | null): Promise<void> {
  if (!state.sessionId) return;
  const target = state.targetSet;
  const mapping = { ...(target === 1 ? state.e1 : state.e2) };
  if (value === null) {
    delete mapping[variable];
  } else {
    mapping[variable] = value;
  }
  const action = async () => {
    const summary = await client.putEvidence(state.sessionId!, target, mapping);
    applySummary(state, summary);
    await refreshScene();
    if (state.selected) await selectVariable(state.selected);
  };
  lastFailed = action;
  await action();
  clearError();
}

const pushThreshold = debounce((percent: number) => {
  if (!state.sessionId) return;
  const action = async () => {
    const summary = await client.putThreshold(state.sessionId!, percent);
    applySummary(state, summary);
    await refreshScene();
  };
  lastFailed = action;
  action().then(clearError, reportError);
}, 100);

async function attachSession(sessionId: string): Promise<void> {
  state.sessionId = sessionId;
  const diff = await client.getDiff(sessionId);
  state.e1 = diff.e1;
  state.e2 = diff.e2;
  state.threshold = diff.threshold;
  $('session-label').textContent = `session ${sessionId.slice(0, 8)}…`;
  ($('workbench') as HTMLElement).hidden = false;
  await refreshScene();
}

async function createSession(): Promise<void> {
  const source = ($('source-kind') as HTMLSelectElement).value;
  const text = ($('source-text') as HTMLTextAreaElement).value;
  if (!text.trim()) {
    showError('Paste a network document or CSV dataset first.', null);
    return;
  }
  const action = async () => {
    let created: { id: string };
    if (source === 'network') {
      created = await client.createSessionFromNetwork(JSON.parse(text));
    } else {
      const maxIndegree = Number(($('learn-indegree') as HTMLInputElement).value) || 2;
      const sampleN = Number(($('learn-sample') as HTMLInputElement).value) || undefined;
      const seed = Number(($('learn-seed') as HTMLInputElement).value) || 0;
      created = await client.createSessionFromDataset(text, { maxIndegree, sampleN, seed });
    }
    await attachSession(created.id);
  };
  lastFailed = action;
  await action();
  clearError();
}

function wirePanZoom(): void {
  const svg = $('structure-svg');
  let dragging = false;
  let lastX = 0;
  let lastY = 0;
  svg.addEventListener('pointerdown', (event) => {
    dragging = true;
    lastX = event.clientX;
    lastY = event.clientY;
  });
  svg.addEventListener('pointermove', (event) => {
    if (!dragging) return;
    state.viewport.x += event.clientX - lastX;
    state.viewport.y += event.clientY - lastY;
    lastX = event.clientX;
    lastY = event.clientY;
    applyViewport();
  });
  svg.addEventListener('pointerup', () => {
    dragging = false;
  });
  svg.addEventListener('wheel', (event) => {
    event.preventDefault();
    const factor = event.deltaY < 0 ? 1.1 : 1 / 1.1;
    state.viewport.scale = Math.min(8, Math.max(0.1, state.viewport.scale * factor));
    applyViewport();
  });
}

function wireControls(): void {
  $('create-button').addEventListener('click', () => {
    createSession().catch(reportError);
  });
  $('attach-button').addEventListener('click', () => {
    const sessionId = ($('attach-id') as HTMLInputElement).value.trim();
    if (sessionId) attachSession(sessionId).catch(reportError);
  });
  const slider = $('threshold-slider') as HTMLInputElement;
  slider.addEventListener('input', () => {
    $('threshold-value').textContent = `${slider.value}%`;
    pushThreshold(Number(slider.value));
  });
  for (const radio of document.querySelectorAll<HTMLInputElement>('input[name="target-set"]')) {
    radio.addEventListener('change', () => {
      state.targetSet = radio.value === '1' ? 1 : 2;
      if (state.selected) selectVariable(state.selected).catch(reportError);
    });
  }
}

function init(): void {
  wireControls();
  wirePanZoom();
}

document.addEventListener('DOMContentLoaded', init);
