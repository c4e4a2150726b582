// Voting panel: candidate list with symbols, one cast action per session
// step. Shows only the acknowledgment sequence after casting — the chosen
// candidate is never written anywhere the page persists.

import { ApiClient, ApiError, ElectionDescriptor } from "./api.js";

export class VotingPanel {
  private selected: number | null = null;
  private election: ElectionDescriptor | null = null;

  constructor(
    private root: HTMLElement,
    private api: ApiClient,
  ) {}

  async load(): Promise<void> {
    this.root.innerHTML = "";
    try {
      this.election = await this.api.getElection();
    } catch (err) {
      this.renderError(
        err instanceof ApiError && err.status === 404
          ? "No election is currently active."
          : "Cannot reach the voting service.",
        "connection-error",
      );
      return;
    }
    this.renderBallot();
  }

  private renderBallot(): void {
    const el = this.election!;
    this.root.innerHTML = `
      <h2>${escapeHtml(el.election_id)}</h2>
      <ul class="candidate-list"></ul>
      <button class="cast-btn" disabled>Cast vote</button>
      <p class="panel-status" role="status"></p>
    `;
    const list = this.root.querySelector(".candidate-list")!;
    el.candidates.forEach((cand, i) => {
      const item = document.createElement("li");
      const btn = document.createElement("button");
      btn.className = "candidate-btn";
      btn.dataset.index = String(i + 1);
      btn.textContent = cand.symbol ? `${cand.symbol} ${cand.name}` : cand.name;
      btn.addEventListener("click", () => this.select(i + 1));
      item.appendChild(btn);
      list.appendChild(item);
    });
    this.castButton().addEventListener("click", () => void this.cast());
  }

  private select(index: number): void {
    this.selected = index;
    this.root.querySelectorAll(".candidate-btn").forEach((b) => {
      b.classList.toggle("selected", (b as HTMLElement).dataset.index === String(index));
    });
    this.castButton().disabled = false;
  }

  private async cast(): Promise<void> {
    if (this.selected === null) return;
    const btn = this.castButton();
    btn.disabled = true;
    try {
      const ack = await this.api.castVote(this.selected);
      this.setStatus(`Ballot recorded. Acknowledgment #${ack.ballot_seq}.`, "ack");
      // clear the selection so nothing about the choice stays on screen
      this.selected = null;
      this.root
        .querySelectorAll(".candidate-btn")
        .forEach((b) => b.classList.remove("selected"));
    } catch (err) {
      if (err instanceof ApiError && err.status === 409) {
        this.setStatus("The ballot limit has been reached; voting is closed.", "limit");
        this.root
          .querySelectorAll<HTMLButtonElement>(".candidate-btn")
          .forEach((b) => (b.disabled = true));
        return; // keep cast disabled
      }
      if (err instanceof ApiError && err.status === 503) {
        this.setStatus(
          "A collection center is unreachable; your ballot was not counted. Try again.",
          "unreachable",
        );
      } else {
        this.setStatus("Connection error; your ballot was not counted.", "connection-error");
      }
      btn.disabled = this.selected === null;
    }
  }

  private castButton(): HTMLButtonElement {
    return this.root.querySelector(".cast-btn") as HTMLButtonElement;
  }

  private setStatus(text: string, kind: string): void {
    const status = this.root.querySelector(".panel-status") as HTMLElement;
    status.textContent = text;
    status.dataset.kind = kind;
  }

  private renderError(text: string, kind: string): void {
    this.root.innerHTML = `<p class="panel-status" role="status"></p>`;
    this.setStatus(text, kind);
  }
}

export function escapeHtml(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}
