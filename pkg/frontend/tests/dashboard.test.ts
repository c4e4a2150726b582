import { beforeEach, describe, expect, it } from "vitest";

import { Dashboard } from "../src/dashboard.js";
import { ELECTION, StubServer, flush, summaries } from "./helpers.js";

let root: HTMLElement;

beforeEach(() => {
  document.body.innerHTML = "<div id='root'></div>";
  root = document.getElementById("root")!;
});

function withSummaries(server: StubServer, counts: number[], sums?: string[]) {
  for (const s of summaries(counts, sums)) {
    server.on("GET", `/cc/${s.x}/summary`, 200, s);
  }
  return server;
}

const TALLY = {
  constant_term: "275",
  polynomial: ["275", "238", "255"],
  counts: [3, 1, 1],
  centers_used: [1, 2, 3],
  total_ballots: 5,
  winner_index: 1,
  tied: false,
  candidates: ["Candidate1", "Candidate2", "Candidate3"],
};

describe("Dashboard", () => {
  it("shows per-center counts but hides sums until a tally runs", async () => {
    const server = withSummaries(
      new StubServer().on("GET", "/election", 200, ELECTION),
      [5, 5, 5, 5, 5],
      ["768", "1771", "3284", "5307", "7840"],
    );
    const dash = new Dashboard(root, server.client(), { pollIntervalMs: 0 });
    await dash.load();
    const counts = Array.from(root.querySelectorAll(".center-count")).map(
      (el) => el.textContent,
    );
    expect(counts).toEqual(["5", "5", "5", "5", "5"]);
    const sums = Array.from(root.querySelectorAll(".center-sum")).map(
      (el) => el.textContent,
    );
    expect(sums.every((s) => s === "hidden until tally")).toBe(true);
  });

  it("renders the count vector and winner after tally", async () => {
    const server = withSummaries(
      new StubServer()
        .on("GET", "/election", 200, ELECTION)
        .on("POST", "/tally", 200, TALLY),
      [5, 5, 5, 5, 5],
      ["768", "1771", "3284", "5307", "7840"],
    );
    const dash = new Dashboard(root, server.client(), { pollIntervalMs: 0 });
    await dash.load();
    (root.querySelector(".tally-btn") as HTMLButtonElement).click();
    await flush();
    const rows = Array.from(root.querySelectorAll(".result-row"));
    expect(rows).toHaveLength(3);
    expect(rows[0].querySelector(".result-count")!.textContent).toBe("3");
    expect(root.querySelector(".winner")!.textContent).toBe("Winner: Candidate1");
    expect(root.querySelector(".centers-used")!.textContent).toContain("CC1, CC2, CC3");
    // partial sums become visible after the tally
    await flush();
    const sums = Array.from(root.querySelectorAll(".center-sum")).map(
      (el) => el.textContent,
    );
    expect(sums).toEqual(["768", "1771", "3284", "5307", "7840"]);
  });

  it("renders an all-green matrix on a clean verify", async () => {
    const server = withSummaries(
      new StubServer()
        .on("GET", "/election", 200, ELECTION)
        .on("GET", "/verify", 200, {
          subsets_checked: [
            [1, 2, 3],
            [1, 2, 4],
            [1, 2, 5],
          ],
          values: ["275", "275", "275"],
          unanimous: true,
          disagreeing_subsets: [],
          suspected_centers: [],
        }),
      [5, 5, 5, 5, 5],
    );
    const dash = new Dashboard(root, server.client(), { pollIntervalMs: 0 });
    await dash.load();
    (root.querySelector(".verify-btn") as HTMLButtonElement).click();
    await flush();
    expect(root.querySelectorAll(".subset-ok")).toHaveLength(3);
    expect(root.querySelectorAll(".subset-bad")).toHaveLength(0);
    expect(root.querySelector(".consistency-summary")!.textContent).toContain(
      "Unanimous over 3 subsets",
    );
  });

  it("marks disagreeing subsets red and names the corrupt center", async () => {
    const server = withSummaries(
      new StubServer()
        .on("GET", "/election", 200, ELECTION)
        .on("GET", "/verify", 200, {
          subsets_checked: [
            [1, 2, 3],
            [1, 2, 5],
            [3, 4, 5],
          ],
          values: ["275", "4111", "902"],
          unanimous: false,
          disagreeing_subsets: [
            [1, 2, 5],
            [3, 4, 5],
          ],
          suspected_centers: [5],
        }),
      [5, 5, 5, 5, 5],
    );
    const dash = new Dashboard(root, server.client(), { pollIntervalMs: 0 });
    await dash.load();
    (root.querySelector(".verify-btn") as HTMLButtonElement).click();
    await flush();
    expect(root.querySelectorAll(".subset-bad")).toHaveLength(2);
    const summary = root.querySelector(".consistency-summary") as HTMLElement;
    expect(summary.textContent).toContain("CC5");
    expect(summary.dataset.kind).toBe("disagreement");
  });

  it("turns a 409 tally into a warning naming lagging centers", async () => {
    const server = withSummaries(
      new StubServer()
        .on("GET", "/election", 200, ELECTION)
        .on("POST", "/tally", 409, { detail: "centers disagree on ballot count" }),
      [5, 5, 4, 5, 5],
    );
    const dash = new Dashboard(root, server.client(), { pollIntervalMs: 0 });
    await dash.load();
    (root.querySelector(".tally-btn") as HTMLButtonElement).click();
    await flush();
    await flush();
    const status = root.querySelector(".dash-status") as HTMLElement;
    expect(status.dataset.kind).toBe("count-mismatch");
    expect(status.textContent).toContain("CC3");
  });
});
