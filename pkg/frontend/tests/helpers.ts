// Shared test fixtures: a canned three-candidate election and a stub fetch
// that serves scripted responses per (method, path).

import { ApiClient } from "../src/api.js";

export const ELECTION = {
  election_id: "trial",
  candidates: [
    { name: "Candidate1", symbol: "*" },
    { name: "Candidate2", symbol: "#" },
    { name: "Candidate3", symbol: "+" },
  ],
  c: 3,
  m: 8,
  k: 3,
  n_cc: 5,
  prime: "9973",
  block_width: 4,
  total_width: 12,
};

export type Route = {
  status: number;
  body: unknown;
};

export class StubServer {
  routes = new Map<string, Route[]>();
  calls: { method: string; path: string; body?: unknown }[] = [];

  on(method: string, path: string, status: number, body: unknown): this {
    const key = `${method} ${path}`;
    if (!this.routes.has(key)) this.routes.set(key, []);
    this.routes.get(key)!.push({ status, body });
    return this;
  }

  fetch = async (url: string | URL | Request, init?: RequestInit): Promise<Response> => {
    const path = String(url);
    const method = init?.method ?? "GET";
    this.calls.push({
      method,
      path,
      body: init?.body ? JSON.parse(String(init.body)) : undefined,
    });
    const key = `${method} ${path}`;
    const queue = this.routes.get(key);
    if (!queue || queue.length === 0) {
      return new Response(JSON.stringify({ detail: `no route for ${key}` }), {
        status: 500,
      });
    }
    const route = queue.length > 1 ? queue.shift()! : queue[0];
    return new Response(JSON.stringify(route.body), {
      status: route.status,
      headers: { "Content-Type": "application/json" },
    });
  };

  client(): ApiClient {
    return new ApiClient("", this.fetch as typeof fetch);
  }
}

export function summaries(counts: number[], sums?: string[]) {
  return counts.map((count, i) => ({
    x: i + 1,
    partial_sum: sums ? sums[i] : "0",
    count,
  }));
}

export function flush(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}
