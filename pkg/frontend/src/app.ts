// Wires state, API client and renderers into one page. The layout:
// search form, error banner, results + distribution chart, the
// recommendation panel with accept buttons, and the query history.

import { ApiClient } from "./api";
import {
    applyError,
    applyRecommend,
    applyRecommendError,
    applySearch,
    availableDimensions,
    beginRequest,
    initialState,
    pushHistory,
    UiState,
} from "./state";
import {
    renderDistributionChart,
    renderError,
    renderHistory,
    renderHits,
    renderRecommendations,
} from "./render";

export interface App {
    state: UiState;
    runQuery: (query: string) => Promise<void>;
    acceptRecommendation: (query: string) => Promise<void>;
    setDimension: (dimension: string) => void;
}

export function init(root: HTMLElement, apiBase = ""): App {
    const api = new ApiClient(apiBase);
    const state = initialState();

    root.innerHTML = `
      <header>
        <form id="search-form">
          <input id="search-input" type="text" placeholder="search query" autocomplete="off" />
          <button id="search-button" type="submit">search</button>
          <select id="dimension-select" title="chart dimension"></select>
        </form>
      </header>
      <div id="error"></div>
      <main>
        <section>
          <h2 id="results-heading">results</h2>
          <div id="results"></div>
          <div id="chart"></div>
        </section>
        <aside id="recommendations"></aside>
      </main>
      <footer id="history"></footer>
    `;

    const input = root.querySelector<HTMLInputElement>("#search-input")!;
    const form = root.querySelector<HTMLFormElement>("#search-form")!;
    const dimensionSelect = root.querySelector<HTMLSelectElement>("#dimension-select")!;
    const resultsHeading = root.querySelector<HTMLElement>("#results-heading")!;
    const results = root.querySelector<HTMLElement>("#results")!;
    const chart = root.querySelector<HTMLElement>("#chart")!;
    const recommendations = root.querySelector<HTMLElement>("#recommendations")!;
    const errorBox = root.querySelector<HTMLElement>("#error")!;
    const historyBox = root.querySelector<HTMLElement>("#history")!;

    function renderDimensionOptions(): void {
        const dims = availableDimensions(state);
        dimensionSelect.replaceChildren();
        for (const dim of dims) {
            const option = document.createElement("option");
            option.value = dim;
            option.textContent = dim;
            option.selected = dim === state.dimension;
            dimensionSelect.appendChild(option);
        }
        if (dims.length > 0 && !dims.includes(state.dimension)) {
            state.dimension = dims[0];
            dimensionSelect.value = dims[0];
        }
    }

    function render(): void {
        renderError(errorBox, state.errorMessage);
        renderHistory(historyBox, state.history);
        if (!state.search) {
            return;
        }
        resultsHeading.textContent = `results for "${state.search.query}"`;
        renderDimensionOptions();
        renderHits(results, state.search.hits);
        renderDistributionChart(
            chart,
            state.dimension,
            state.search.distributions[state.dimension],
        );
        if (state.recommend) {
            renderRecommendations(
                recommendations,
                state.recommend.recommendations,
                state.recommend.original,
                state.dimension,
                { onAccept: (query) => void acceptRecommendation(query) },
            );
        } else {
            recommendations.replaceChildren();
            const note = document.createElement("p");
            note.className = "placeholder";
            note.textContent = state.recommendError
                ? `recommendations unavailable: ${state.recommendError}`
                : "";
            recommendations.appendChild(note);
        }
    }

    async function runQuery(query: string): Promise<void> {
        const trimmed = query.trim();
        if (!trimmed) {
            return;
        }
        input.value = trimmed;
        const token = beginRequest(state, trimmed);
        // search result first: it must land even if recommending fails
        try {
            const search = await api.search(trimmed);
            if (!applySearch(state, token, search)) {
                return;
            }
        } catch (error) {
            const message = error instanceof Error ? error.message : String(error);
            // keep previous results on screen, just show the banner
            if (applyError(state, token, message)) {
                renderError(errorBox, state.errorMessage);
            }
            return;
        }
        try {
            const recommend = await api.recommend(trimmed);
            applyRecommend(state, token, recommend);
        } catch (error) {
            const message = error instanceof Error ? error.message : String(error);
            applyRecommendError(state, token, message);
        }
        if (token === state.requestToken) {
            render();
        }
    }

    async function acceptRecommendation(query: string): Promise<void> {
        pushHistory(state, query);
        await runQuery(query);
    }

    form.addEventListener("submit", (event) => {
        event.preventDefault();
        pushHistory(state, input.value.trim());
        void runQuery(input.value);
    });

    dimensionSelect.addEventListener("change", () => {
        // pure client-side re-render: no new request
        state.dimension = dimensionSelect.value;
        render();
    });

    return { state, runQuery, acceptRecommendation, setDimension: (d) => { state.dimension = d; render(); } };
}
