// Pure renderers: UiState in, HTML string out. No network, no score math;
// every number displayed is a value the server returned.

import type { UiState } from "./store.js";
import type { CategoryEntryJson, RoutineJson, ScoredProductJson } from "./types.js";
import { CATEGORIES, CONCERNS, SKIN_TYPES } from "./types.js";
import { escapeAttr, escapeHtml, scoreSpan } from "./render-util.js";
import { legendEntries, renderScatter } from "./scatter.js";

function options(values: readonly string[], selected: string): string {
  return values
    .map(
      (v) =>
        `<option value="${escapeAttr(v)}"${v === selected ? " selected" : ""}>${escapeHtml(v)}</option>`,
    )
    .join("");
}

function fieldError(state: UiState, field: string): string {
  const message = state.fieldErrors[field];
  return message ? `<p class="field-error" data-field-error="${escapeAttr(field)}">${escapeHtml(message)}</p>` : "";
}

export function renderBanner(state: UiState): string {
  if (!state.banner) return "";
  return (
    `<div class="banner" role="alert">${escapeHtml(state.banner)} ` +
    `<button data-action="dismiss-banner">dismiss</button></div>`
  );
}

export function renderProfile(state: UiState): string {
  const tabs = (["questionnaire", "confidences", "direct"] as const)
    .map(
      (mode) =>
        `<button class="tab${state.formMode === mode ? " active" : ""}" ` +
        `data-action="form-mode" data-mode="${mode}">${mode}</button>`,
    )
    .join("");

  let form = "";
  if (state.formMode === "questionnaire") {
    const q = state.questionnaire;
    form = `
      <label>Tightness after washing
        <select data-field="tightness_after_wash">${options(["never", "sometimes", "always"], q.tightness_after_wash)}</select>
      </label>
      <label>Midday shine
        <select data-field="midday_shine">${options(["none", "tzone", "allover"], q.midday_shine)}</select>
      </label>
      <label><input type="checkbox" data-field="reacts_to_new_products"${q.reacts_to_new_products ? " checked" : ""}>
        Skin reacts to new products</label>
      <label>Primary goal
        <select data-field="primary_goal">${options(CONCERNS, q.primary_goal)}</select>
      </label>`;
  } else if (state.formMode === "confidences") {
    form = `
      <label>Skin type
        <select data-field="skinType">${options(SKIN_TYPES, state.skinType)}</select>
      </label>
      <label>Classifier confidences (Acne, ClearSkin, Pigmentation, Wrinkles)
        <input type="text" data-field="confidences" value="${escapeAttr(state.confidences)}">
      </label>
      ${fieldError(state, "confidences")}`;
  } else {
    form = `
      <label>Skin type
        <select data-field="skinType">${options(SKIN_TYPES, state.skinType)}</select>
      </label>
      <label>Concern
        <select data-field="concern">${options(CONCERNS, state.concern)}</select>
      </label>`;
  }

  const result = state.assessment
    ? `<div class="assessment" data-testid="assessment">
         detected: <strong>${escapeHtml(state.assessment.skin_type)}</strong> /
         <strong>${escapeHtml(state.assessment.concern)}</strong>
         <small>(source: ${escapeHtml(state.assessment.source)})</small>
       </div>`
    : "";

  return `<section class="panel profile">
    <h2>1. Skin profile</h2>
    <div class="tabs">${tabs}</div>
    <form data-form="profile">${form}
      <button data-action="submit-profile"${state.busy ? " disabled" : ""}>Assess</button>
    </form>
    ${result}
  </section>`;
}

function productRow(state: UiState, item: ScoredProductJson): string {
  const title = `${item.brand ?? "product"} ${item.name ?? ""}`.trim();
  return `<li class="product" data-product-id="${item.product_id}">
    <button class="link" data-action="pick-anchor" data-product-id="${item.product_id}"
      title="use as anchor">#${item.product_id}</button>
    <span class="title">${escapeHtml(title)}</span>
    ${scoreSpan(item.final_score)}
    <small>cos ${scoreSpan(item.cosine_part)} / mf ${scoreSpan(item.mf_part)}</small>
  </li>`;
}

function categoryCard(state: UiState, entry: CategoryEntryJson): string {
  const showingAlternatives =
    state.alternatives !== null && state.alternatives.category === entry.category;
  const items = showingAlternatives ? state.alternatives!.products : entry.products;
  const body = items.length
    ? `<ul>${items.map((item) => productRow(state, item)).join("")}</ul>`
    : `<p class="empty">no matching products</p>`;
  const badge = showingAlternatives
    ? `<span class="badge">${escapeHtml(state.alternatives!.brand)} alternatives
       <button data-action="clear-alternatives">reset</button></span>`
    : "";
  return `<article class="card" data-category="${escapeAttr(entry.category)}">
    <h3>${escapeHtml(entry.category)} ${badge}</h3>
    ${body}
    <div class="alt-picker">
      <input type="text" placeholder="brand"
        data-field="brand-for:${escapeAttr(entry.category)}"
        value="${state.selectedCategory === entry.category ? escapeAttr(state.alternativeBrand) : ""}">
      <button data-action="alternatives" data-category="${escapeAttr(entry.category)}">
        suggest alternatives</button>
    </div>
  </article>`;
}

export function renderRoutine(state: UiState): string {
  const controls = `
    <div class="controls">
      <label>anchor product:
        <span data-testid="anchor">${state.anchor === null ? "none" : `#${state.anchor}`}</span>
        ${state.anchor !== null ? '<button data-action="clear-anchor">clear</button>' : ""}
      </label>
      <label>blend (ingredients vs profile fit):
        <input type="range" min="0" max="1" step="0.05" value="${state.alpha}" data-field="alpha">
        <span data-testid="alpha">${state.alpha}</span>
      </label>
      <button data-action="recommend"${state.busy || !state.assessment ? " disabled" : ""}>
        Build routine</button>
    </div>`;

  const cards = state.routine
    ? `<div class="cards">${state.routine.categories.map((c) => categoryCard(state, c)).join("")}</div>`
    : `<p class="empty">no routine yet; assess your skin and build one</p>`;

  return `<section class="panel routine">
    <h2>2. Routine</h2>
    ${controls}
    ${cards}
  </section>`;
}

export function renderMap(state: UiState): string {
  const scopes = ["global", ...CATEGORIES.map((c) => `category:${c}`)];
  const legend = state.embedding
    ? `<ul class="legend">${legendEntries(state.embedding.points, state.viewport.colorBy)
        .map((e) => `<li><span class="swatch" style="background:${e.color}"></span>${escapeHtml(e.key)}</li>`)
        .join("")}</ul>`
    : "";
  const plot = state.embedding
    ? renderScatter(state.embedding.points, state.viewport, {
        width: 640,
        height: 420,
        anchor: state.anchor,
      })
    : `<p class="empty">embedding not loaded</p>`;
  return `<section class="panel map">
    <h2>3. Ingredient-similarity map</h2>
    <div class="controls">
      <label>scope <select data-field="scope">${options(scopes, state.viewport.scope)}</select></label>
      <label>color by <select data-field="colorBy">${options(["category", "issue"], state.viewport.colorBy)}</select></label>
      <button data-action="zoom-in">+</button>
      <button data-action="zoom-out">-</button>
      <button data-action="zoom-reset">reset view</button>
      <button data-action="load-embedding">load</button>
      <small>click a point to use it as the routine anchor</small>
    </div>
    ${plot}
    ${legend}
  </section>`;
}

function historyEntry(routine: RoutineJson, index: number): string {
  const counts = routine.categories
    .map((entry) => `${entry.category} ${entry.products.length}`)
    .join(", ");
  return `<li data-testid="history-entry">
    <strong>${escapeHtml(routine.created_at)}</strong>
    ${escapeHtml(routine.assessment.skin_type)} / ${escapeHtml(routine.assessment.concern)},
    anchor ${routine.anchor === null ? "none" : `#${routine.anchor}`},
    alpha ${routine.alpha} <small>(${escapeHtml(counts)})</small>
  </li>`;
}

export function renderHistory(state: UiState): string {
  const newestFirst = [...state.history].reverse();
  const list = newestFirst.length
    ? `<ol class="history">${newestFirst.map(historyEntry).join("")}</ol>`
    : `<p class="empty">no routines recorded in this session yet</p>`;
  return `<section class="panel history">
    <h2>4. History</h2>
    <button data-action="refresh-history"${state.sessionId ? "" : " disabled"}>refresh</button>
    ${list}
  </section>`;
}

export function render(state: UiState): string {
  return `
    ${renderBanner(state)}
    <header>
      <h1>skincare routine explorer</h1>
      <small data-testid="session">${state.sessionId ? `session ${state.sessionId}` : "no session"}</small>
    </header>
    <main>
      ${renderProfile(state)}
      ${renderRoutine(state)}
      ${renderMap(state)}
      ${renderHistory(state)}
    </main>`;
}
