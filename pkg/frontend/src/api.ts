// Typed client for the recommendation service JSON API. The UI never
// computes scores itself; everything shown comes from these payloads.

export interface Hit {
    doc_id: string;
    title: string;
    url: string | null;
    score: number;
    attributes: Record<string, string[]>;
}

export interface Distribution {
    probs: Record<string, number>;
    support_count: number;
}

export interface SearchResponse {
    query: string;
    hits: Hit[];
    distributions: Record<string, Distribution>;
}

export interface DimScore {
    name: string;
    value: number;
}

export interface ScoredEntry {
    query: string;
    dim_scores: DimScore[];
    hits: Hit[];
    distributions: Record<string, Distribution>;
}

export interface RecommendResponse {
    original: ScoredEntry;
    recommendations: ScoredEntry[];
    trace_summary: {
        iterations_used: number;
        candidates_scored: number;
        recommended: number;
    };
}

export interface TopicList {
    topics: { id: string; title: string; keywords: string[]; relevant_docs: string[] }[];
}

export class ApiError extends Error {
    constructor(message: string, readonly status: number) {
        super(message);
    }
}

async function asJson<T>(response: Response): Promise<T> {
    const body = await response.json().catch(() => ({}));
    if (!response.ok) {
        const detail = (body as { detail?: unknown }).detail;
        const message = typeof detail === "string" ? detail : `service error (${response.status})`;
        throw new ApiError(message, response.status);
    }
    return body as T;
}

export class ApiClient {
    constructor(private readonly base: string = "") {}

    async health(): Promise<{ status: string; docs: number }> {
        return asJson(await fetch(`${this.base}/api/health`));
    }

    async search(query: string, n = 10): Promise<SearchResponse> {
        const params = new URLSearchParams({ q: query, n: String(n) });
        return asJson(await fetch(`${this.base}/api/search?${params}`));
    }

    async recommend(query: string, options: { k?: number; n?: number; method?: string } = {}): Promise<RecommendResponse> {
        const response = await fetch(`${this.base}/api/recommend`, {
            method: "POST",
            headers: { "Content-Type": "application/json" },
            body: JSON.stringify({ query, ...options }),
        });
        return asJson(response);
    }

    async topics(): Promise<TopicList> {
        return asJson(await fetch(`${this.base}/api/topics`));
    }
}
