// Single mutable UI state. History only grows through user actions
// (submitting a query or accepting a recommendation); stale responses
// are matched against a request token and dropped.

import type { RecommendResponse, SearchResponse } from "./api";

export interface UiState {
    query: string;
    search: SearchResponse | null;
    recommend: RecommendResponse | null;
    dimension: string;
    history: string[];
    errorMessage: string | null;
    recommendError: string | null;
    loading: boolean;
    requestToken: number;
}

export function initialState(dimension = "geography"): UiState {
    return {
        query: "",
        search: null,
        recommend: null,
        dimension,
        history: [],
        errorMessage: null,
        recommendError: null,
        loading: false,
        requestToken: 0,
    };
}

export function beginRequest(state: UiState, query: string): number {
    state.query = query;
    state.loading = true;
    state.errorMessage = null;
    state.recommendError = null;
    state.requestToken += 1;
    return state.requestToken;
}

export function applySearch(state: UiState, token: number, search: SearchResponse): boolean {
    if (token !== state.requestToken) {
        return false; // a newer query is in flight; drop this reply
    }
    state.search = search;
    state.loading = false;
    return true;
}

export function applyRecommend(
    state: UiState,
    token: number,
    recommend: RecommendResponse,
): boolean {
    if (token !== state.requestToken) {
        return false;
    }
    state.recommend = recommend;
    state.recommendError = null;
    return true;
}

export function applyResponses(
    state: UiState,
    token: number,
    search: SearchResponse,
    recommend: RecommendResponse,
): boolean {
    const applied = applySearch(state, token, search);
    if (applied) {
        applyRecommend(state, token, recommend);
    }
    return applied;
}

export function applyError(state: UiState, token: number, message: string): boolean {
    if (token !== state.requestToken) {
        return false;
    }
    state.errorMessage = message;
    state.loading = false;
    return true;
}

export function applyRecommendError(state: UiState, token: number, message: string): boolean {
    if (token !== state.requestToken) {
        return false;
    }
    state.recommend = null;
    state.recommendError = message;
    return true;
}

export function pushHistory(state: UiState, query: string): void {
    state.history.push(query);
}

export function availableDimensions(state: UiState): string[] {
    if (!state.search) {
        return [];
    }
    return Object.keys(state.search.distributions);
}
