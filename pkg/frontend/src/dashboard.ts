// Commissioner dashboard: live per-center ballot counts, tally and verify
// actions, result bars and the consistency matrix. Partial sums are shown
// only after a tally has been run; until then the dashboard displays counts
// alone, matching the privacy boundary of the API.

import {
  ApiClient,
  ApiError,
  ElectionDescriptor,
  TallyResult,
  VerifyReport,
} from "./api.js";
import { escapeHtml } from "./panel.js";

export interface DashboardOptions {
  pollIntervalMs?: number;
}

export class Dashboard {
  private election: ElectionDescriptor | null = null;
  private timer: ReturnType<typeof setInterval> | null = null;
  private tallied = false;

  constructor(
    private root: HTMLElement,
    private api: ApiClient,
    private options: DashboardOptions = {},
  ) {}

  async load(): Promise<void> {
    try {
      this.election = await this.api.getElection();
    } catch {
      this.root.innerHTML = `<p class="dash-status" data-kind="connection-error">
        Cannot reach the voting service.</p>`;
      return;
    }
    this.renderSkeleton();
    await this.refreshCounts();
    const interval = this.options.pollIntervalMs ?? 2000;
    if (interval > 0) {
      this.timer = setInterval(() => void this.refreshCounts(), interval);
    }
  }

  stop(): void {
    if (this.timer !== null) clearInterval(this.timer);
    this.timer = null;
  }

  private renderSkeleton(): void {
    const el = this.election!;
    this.root.innerHTML = `
      <h2>Commissioner dashboard</h2>
      <section class="centers">
        <h3>Collection centers</h3>
        <table class="center-table">
          <thead><tr><th>Center</th><th>Ballots</th><th>Partial sum</th></tr></thead>
          <tbody>
            ${Array.from({ length: el.n_cc }, (_, i) => `
              <tr data-center="${i + 1}">
                <td>CC${i + 1}</td>
                <td class="center-count">-</td>
                <td class="center-sum">hidden until tally</td>
              </tr>`).join("")}
          </tbody>
        </table>
      </section>
      <section class="actions">
        <button class="tally-btn">Tally</button>
        <button class="verify-btn">Verify</button>
        <p class="dash-status" role="status"></p>
      </section>
      <section class="results" hidden>
        <h3>Result</h3>
        <div class="result-bars"></div>
        <p class="winner"></p>
        <p class="centers-used"></p>
      </section>
      <section class="consistency" hidden>
        <h3>Consistency</h3>
        <p class="consistency-summary"></p>
        <table class="subset-matrix"><tbody></tbody></table>
      </section>
    `;
    this.root.querySelector(".tally-btn")!.addEventListener("click", () => void this.runTally());
    this.root.querySelector(".verify-btn")!.addEventListener("click", () => void this.runVerify());
  }

  private async refreshCounts(): Promise<void> {
    const el = this.election!;
    try {
      const summaries = await this.api.getAllSummaries(el.n_cc);
      for (const s of summaries) {
        const row = this.root.querySelector(`tr[data-center="${s.x}"]`);
        if (!row) continue;
        row.querySelector(".center-count")!.textContent = String(s.count);
        if (this.tallied) {
          row.querySelector(".center-sum")!.textContent = s.partial_sum;
        }
      }
    } catch {
      this.setStatus("Lost contact with the service.", "connection-error");
    }
  }

  private async runTally(): Promise<void> {
    try {
      const result = await this.api.tally();
      this.tallied = true;
      this.renderResult(result);
      this.setStatus("", "");
      await this.refreshCounts();
    } catch (err) {
      if (err instanceof ApiError && err.status === 409) {
        // count mismatch: name the lagging centers from the live counts
        const el = this.election!;
        const summaries = await this.api.getAllSummaries(el.n_cc).catch(() => []);
        const max = Math.max(...summaries.map((s) => s.count), 0);
        const lagging = summaries.filter((s) => s.count < max).map((s) => `CC${s.x}`);
        this.setStatus(
          `Centers disagree on ballot count${lagging.length ? `; lagging: ${lagging.join(", ")}` : ""}.`,
          "count-mismatch",
        );
      } else {
        this.setStatus("Tally failed.", "error");
      }
    }
  }

  private renderResult(result: TallyResult): void {
    const section = this.root.querySelector(".results") as HTMLElement;
    section.hidden = false;
    const bars = section.querySelector(".result-bars") as HTMLElement;
    const maxCount = Math.max(...result.counts, 1);
    bars.innerHTML = result.candidates
      .map((name, i) => {
        const count = result.counts[i];
        const width = Math.round((count / maxCount) * 100);
        return `<div class="result-row" data-candidate="${i + 1}">
          <span class="result-name">${escapeHtml(name)}</span>
          <span class="result-bar" style="width:${width}%"></span>
          <span class="result-count">${count}</span>
        </div>`;
      })
      .join("");
    const winnerName = result.candidates[result.winner_index - 1];
    (section.querySelector(".winner") as HTMLElement).textContent = result.tied
      ? `Tie; first leader: ${winnerName}`
      : `Winner: ${winnerName}`;
    (section.querySelector(".centers-used") as HTMLElement).textContent =
      `Centers used: ${result.centers_used.map((j) => `CC${j}`).join(", ")}`;
  }

  private async runVerify(): Promise<void> {
    try {
      const report = await this.api.verify();
      this.renderConsistency(report);
    } catch {
      this.setStatus("Verification failed.", "error");
    }
  }

  private renderConsistency(report: VerifyReport): void {
    const section = this.root.querySelector(".consistency") as HTMLElement;
    section.hidden = false;
    const summary = section.querySelector(".consistency-summary") as HTMLElement;
    if (report.unanimous) {
      summary.textContent = `Unanimous over ${report.subsets_checked.length} subsets.`;
      summary.dataset.kind = "unanimous";
    } else {
      const suspects = report.suspected_centers.map((j) => `CC${j}`).join(", ");
      summary.textContent = suspects
        ? `Disagreement detected; suspected: ${suspects}.`
        : "Disagreement detected; could not isolate a single center.";
      summary.dataset.kind = "disagreement";
    }
    const bad = new Set(report.disagreeing_subsets.map((s) => s.join(",")));
    const body = section.querySelector(".subset-matrix tbody") as HTMLElement;
    body.innerHTML = report.subsets_checked
      .map((subset, i) => {
        const key = subset.join(",");
        const cls = bad.has(key) ? "subset-bad" : "subset-ok";
        return `<tr class="${cls}">
          <td>{${subset.map((j) => `CC${j}`).join(", ")}}</td>
          <td>${report.values[i]}</td>
        </tr>`;
      })
      .join("");
  }

  private setStatus(text: string, kind: string): void {
    const status = this.root.querySelector(".dash-status") as HTMLElement;
    if (!status) return;
    status.textContent = text;
    status.dataset.kind = kind;
  }
}
