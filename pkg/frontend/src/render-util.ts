export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

export function escapeAttr(text: string): string {
  return escapeHtml(text);
}

// Scores are rendered with the raw server value attached, so tests can
// trace every displayed number back to a response body.
export function scoreSpan(value: number, label = ""): string {
  return `<span class="score" data-raw="${value}">${label}${value.toFixed(3)}</span>`;
}
