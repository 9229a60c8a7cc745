// DOM rendering. Pure view over API payloads: every number shown is
// copied (formatted to 3 decimals) straight from the response.

import type { Distribution, Hit, ScoredEntry } from "./api";

export function formatScore(value: number): string {
    return value.toFixed(3);
}

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

function attributeChips(hit: Hit): HTMLElement {
    const wrap = el("span", "chips");
    for (const [dimension, labels] of Object.entries(hit.attributes)) {
        for (const label of labels) {
            wrap.appendChild(el("span", "chip", `${dimension}: ${label}`));
        }
    }
    return wrap;
}

export function renderHits(container: HTMLElement, hits: Hit[]): void {
    container.replaceChildren();
    if (hits.length === 0) {
        container.appendChild(el("p", "placeholder", "no results"));
        return;
    }
    const list = el("ol", "hits");
    for (const hit of hits) {
        const item = el("li", "hit");
        item.dataset.docId = hit.doc_id;
        const title = el("span", "hit-title", hit.title || hit.doc_id);
        item.appendChild(title);
        item.appendChild(el("span", "hit-score", formatScore(hit.score)));
        item.appendChild(attributeChips(hit));
        list.appendChild(item);
    }
    container.appendChild(list);
}

export function renderDistributionChart(
    container: HTMLElement,
    dimension: string,
    dist: Distribution | undefined,
    compare?: Distribution,
): void {
    container.replaceChildren();
    container.appendChild(el("h3", "chart-title", dimension));
    if (!dist || dist.support_count === 0) {
        container.appendChild(el("p", "placeholder", `no ${dimension} labels in these results`));
        return;
    }
    const chart = el("div", "chart");
    const categories = Object.keys(dist.probs);
    if (compare) {
        for (const cat of Object.keys(compare.probs)) {
            if (!categories.includes(cat)) categories.push(cat);
        }
    }
    for (const cat of categories.sort()) {
        const row = el("div", "chart-row");
        row.appendChild(el("span", "chart-label", cat));
        const p = dist.probs[cat] ?? 0;
        const bar = el("span", "bar bar-main");
        bar.style.width = `${Math.round(p * 200)}px`;
        bar.title = formatScore(p);
        row.appendChild(bar);
        if (compare) {
            const q = compare.probs[cat] ?? 0;
            const other = el("span", "bar bar-compare");
            other.style.width = `${Math.round(q * 200)}px`;
            other.title = formatScore(q);
            row.appendChild(other);
        }
        row.appendChild(el("span", "chart-value", formatScore(p)));
        chart.appendChild(row);
    }
    container.appendChild(chart);
}

export interface RecommendationActions {
    onAccept: (query: string) => void;
}

export function renderRecommendations(
    container: HTMLElement,
    entries: ScoredEntry[],
    original: ScoredEntry | null,
    dimension: string,
    actions: RecommendationActions,
): void {
    container.replaceChildren();
    container.appendChild(el("h2", "panel-title", "balanced alternatives"));
    if (entries.length === 0) {
        container.appendChild(el("p", "placeholder", "no balanced alternatives found"));
        return;
    }
    const list = el("ul", "recommendations");
    for (const entry of entries) {
        const item = el("li", "recommendation");
        item.dataset.query = entry.query;

        const header = el("div", "rec-header");
        header.appendChild(el("span", "rec-query", entry.query));
        const accept = el("button", "accept", "accept");
        accept.type = "button";
        accept.addEventListener("click", () => actions.onAccept(entry.query));
        header.appendChild(accept);
        item.appendChild(header);

        const scores = el("div", "rec-scores");
        for (const dim of entry.dim_scores) {
            const badge = el("span", "score", `${dim.name} ${formatScore(dim.value)}`);
            badge.dataset.dim = dim.name;
            badge.dataset.value = formatScore(dim.value);
            scores.appendChild(badge);
        }
        item.appendChild(scores);

        const chart = el("div", "rec-chart");
        renderDistributionChart(
            chart,
            dimension,
            entry.distributions[dimension],
            original?.distributions[dimension],
        );
        item.appendChild(chart);
        list.appendChild(item);
    }
    container.appendChild(list);
}

export function renderError(container: HTMLElement, message: string | null): void {
    container.replaceChildren();
    if (message) {
        container.appendChild(el("div", "error-banner", message));
    }
}

export function renderHistory(container: HTMLElement, history: string[]): void {
    container.replaceChildren();
    if (history.length === 0) return;
    container.appendChild(el("h3", "panel-title", "history"));
    const list = el("ol", "history");
    for (const entry of history) {
        list.appendChild(el("li", "history-entry", entry));
    }
    container.appendChild(list);
}
