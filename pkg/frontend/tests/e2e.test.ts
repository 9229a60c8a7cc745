// End-to-end: spawn the real HTTP service over the bundled synthetic
// corpus and drive the UI against it. Search must render hits, the
// recommendation panel must show dim_scores identical to the API
// payload, and accepting a recommendation must trigger a new search for
// exactly that query.

import { ChildProcess, spawn } from "node:child_process";
import * as path from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api";
import { init } from "../src/app";
import { formatScore } from "../src/render";

const PORT = 8791;
const BASE = `http://127.0.0.1:${PORT}`;
const REPO_ROOT = path.resolve(__dirname, "..", "..");
const DATA = path.join(REPO_ROOT, "data", "synthetic");

let service: ChildProcess;

async function waitForHealth(timeoutMs = 30000): Promise<void> {
    const deadline = Date.now() + timeoutMs;
    while (Date.now() < deadline) {
        try {
            const response = await fetch(`${BASE}/api/health`);
            if (response.ok) return;
        } catch {
            // not up yet
        }
        await new Promise((resolve) => setTimeout(resolve, 250));
    }
    throw new Error("service did not come up in time");
}

beforeAll(async () => {
    service = spawn(
        "python3",
        [
            "-m", "bqr.cli",
            "--corpus", path.join(DATA, "corpus.jsonl"),
            "--topics", path.join(DATA, "topics.jsonl"),
            "--embeddings", path.join(DATA, "vectors.txt"),
            "--fixtures", path.join(DATA, "fixtures.json"),
            "--config", path.join(DATA, "config.json"),
            "serve", "--host", "127.0.0.1", "--port", String(PORT),
        ],
        { cwd: REPO_ROOT, stdio: ["ignore", "pipe", "pipe"] },
    );
    service.stderr?.on("data", (chunk) => {
        process.stderr.write(`[service] ${chunk}`);
    });
    await waitForHealth();
});

afterAll(() => {
    service?.kill("SIGTERM");
});

describe("UI against the live service", () => {
    it("health and topics respond", async () => {
        const api = new ApiClient(BASE);
        const health = await api.health();
        expect(health.status).toBe("ok");
        expect(health.docs).toBeGreaterThan(0);
        const topics = await api.topics();
        expect(topics.topics.map((t) => t.id)).toContain("t-politics");
    });

    it("searching renders hits and a distribution chart", async () => {
        document.body.innerHTML = "<div id='app'></div>";
        const app = init(document.getElementById("app")!, BASE);
        await app.runQuery("politics");

        const hits = document.querySelectorAll("li.hit");
        expect(hits.length).toBeGreaterThan(0);
        const api = new ApiClient(BASE);
        const direct = await api.search("politics");
        expect(hits.length).toBe(direct.hits.length);
        expect(
            document.querySelectorAll("#chart .chart-row").length,
        ).toBeGreaterThan(0);
    });

    it("recommendation panel shows dim_scores equal to the API payload", async () => {
        document.body.innerHTML = "<div id='app'></div>";
        const app = init(document.getElementById("app")!, BASE);
        await app.runQuery("politics");

        const api = new ApiClient(BASE);
        const direct = await api.recommend("politics");
        expect(direct.recommendations.length).toBeGreaterThan(0);

        const items = Array.from(
            document.querySelectorAll<HTMLElement>(".recommendation"),
        );
        expect(items.map((i) => i.dataset.query)).toEqual(
            direct.recommendations.map((r) => r.query),
        );
        for (let i = 0; i < items.length; i++) {
            const badges = Array.from(items[i].querySelectorAll<HTMLElement>(".score"));
            const want = direct.recommendations[i].dim_scores.map(
                (d) => `${d.name} ${formatScore(d.value)}`,
            );
            expect(badges.map((b) => b.textContent)).toEqual(want);
        }
    });

    it("accepting a recommendation searches for exactly that query", async () => {
        document.body.innerHTML = "<div id='app'></div>";
        const app = init(document.getElementById("app")!, BASE);
        await app.runQuery("politics");

        const first = document.querySelector<HTMLElement>(".recommendation")!;
        const accepted = first.dataset.query!;
        first.querySelector<HTMLButtonElement>("button.accept")!.click();

        const deadline = Date.now() + 20000;
        while (Date.now() < deadline && app.state.query !== accepted) {
            await new Promise((resolve) => setTimeout(resolve, 100));
        }
        while (Date.now() < deadline && app.state.loading) {
            await new Promise((resolve) => setTimeout(resolve, 100));
        }
        expect(app.state.query).toBe(accepted);
        expect(app.state.history).toContain(accepted);
        expect(
            document.getElementById("results-heading")?.textContent,
        ).toContain(accepted);
        const input = document.querySelector<HTMLInputElement>("#search-input")!;
        expect(input.value).toBe(accepted);
        expect(app.state.search?.query).toBe(accepted);
    });

    it("service determinism: replaying history yields identical payloads", async () => {
        const api = new ApiClient(BASE);
        const first = await api.recommend("music");
        const second = await api.recommend("music");
        expect(JSON.stringify(first)).toBe(JSON.stringify(second));
    });
});
