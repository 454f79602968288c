/**
 * DOM builders: data in, detached nodes out. No fetching in here, which
 * keeps every view testable under jsdom without a gateway.
 */
import { SearchResult, SourceStatus, Spread, Summary, Library, Notification, Alert } from "./schemas";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function badges(summary: Summary): HTMLElement {
  const wrap = el("span", "badges");
  const parts: Array<[string, string, number | string]> = [
    ["badge-comments", "comments", summary.comment_count],
    ["badge-ratings", "ratings", summary.rating_count],
    ["badge-forwards", "forwards", summary.forward_count],
    ["badge-library", "library", summary.library_count],
  ];
  for (const [cls, label, value] of parts) {
    const badge = el("span", `badge ${cls}`, `${label} ${value}`);
    badge.title = label;
    wrap.appendChild(badge);
  }
  if (summary.avg_rating !== undefined) {
    wrap.appendChild(el("span", "badge badge-avg", `avg ${summary.avg_rating.toFixed(1)}`));
  }
  return wrap;
}

export function resultListItem(result: SearchResult): HTMLLIElement {
  const li = el("li", "result");
  li.dataset.item = result.item;

  const title = el("div", "result-title", result.record.title);
  if (result.in_library) {
    title.appendChild(el("span", "in-library", " ✓ in library"));
  }
  li.appendChild(title);

  const meta = el("div", "result-meta");
  meta.appendChild(el("span", "creators", result.record.creators.join("; ")));
  meta.appendChild(el("span", "source", ` — ${result.source}`));
  meta.appendChild(el("span", "score", ` (score ${result.final_score.toFixed(3)})`));
  li.appendChild(meta);

  li.appendChild(badges(result.summary));
  return li;
}

export function degradedBanner(errors: SourceStatus[]): HTMLElement | null {
  if (errors.length === 0) return null;
  const names = errors.map((status) => `${status.source} (${status.error})`).join(", ");
  const banner = el("div", "banner degraded", `Some libraries did not answer: ${names}`);
  banner.setAttribute("role", "alert");
  return banner;
}

export function libraryView(library: Library): HTMLElement {
  const wrap = el("div", "library");
  if (library.folders.length === 0) {
    wrap.appendChild(el("p", "empty", "No folders yet — tag a result to create one."));
    return wrap;
  }
  for (const folder of library.folders) {
    const section = el("section", "folder");
    section.dataset.folder = folder.folder;
    section.appendChild(el("h3", "folder-name", folder.folder));
    const list = el("ul", "folder-items");
    for (const item of folder.items) {
      const entry = el("li", "folder-item", item.record.title);
      entry.dataset.item = item.item_id;
      list.appendChild(entry);
    }
    section.appendChild(list);
    wrap.appendChild(section);
  }
  return wrap;
}

export function spreadPanel(spread: Spread): HTMLElement {
  const panel = el("div", "spread-panel");
  panel.appendChild(el("span", "spread-reach", `reach ${spread.reach}`));
  panel.appendChild(el("span", "spread-depth", `max depth ${spread.max_depth}`));
  panel.appendChild(
    el("span", "spread-shape", `${spread.roots.length} root(s), ${spread.edges.length} edge(s)`),
  );
  return panel;
}

export function alertCard(alert: Alert): HTMLElement {
  const card = el("div", "alert-card");
  card.dataset.alert = alert.alert_id;
  card.appendChild(el("div", "alert-terms", `terms: ${alert.terms.join(", ")}`));
  const chips = el("div", "alert-chips");
  for (const term of alert.recommended_terms) {
    chips.appendChild(el("span", "chip", term));
  }
  card.appendChild(chips);
  return card;
}

export function notificationRow(note: Notification, title?: string): HTMLLIElement {
  const li = el("li", `notification ${note.reason}`);
  const label = note.reason === "alert_match" ? "alert" : "shared with you";
  li.appendChild(el("span", "notification-reason", `[${label}] `));
  li.appendChild(el("span", "notification-item", title ?? note.item));
  if (note.message) li.appendChild(el("span", "notification-message", ` — ${note.message}`));
  return li;
}
