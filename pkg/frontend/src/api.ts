// Typed client for the voting service JSON API.
// Field elements (prime, partial sums, polynomial coefficients) are decimal
// strings on the wire; see FORMATS.md in the repo root.

export interface Candidate {
  name: string;
  symbol: string;
}

export interface ElectionDescriptor {
  election_id: string;
  candidates: Candidate[];
  c: number;
  m: number;
  k: number;
  n_cc: number;
  prime: string;
  block_width: number;
  total_width: number;
}

export interface BallotAck {
  ballot_seq: number;
  centers_acked: number;
}

export interface CenterSummary {
  x: number;
  partial_sum: string;
  count: number;
}

export interface TallyResult {
  constant_term: string;
  polynomial: string[];
  counts: number[];
  centers_used: number[];
  total_ballots: number;
  winner_index: number;
  tied: boolean;
  candidates: string[];
}

export interface VerifyReport {
  subsets_checked: number[][];
  values: string[];
  unanimous: boolean;
  disagreeing_subsets: number[][];
  suspected_centers: number[];
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
  }
}

type FetchLike = typeof fetch;

export class ApiClient {
  constructor(
    private baseUrl: string = "",
    private fetchImpl: FetchLike = fetch,
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    if (!resp.ok) {
      let detail = resp.statusText;
      try {
        const body = await resp.json();
        if (body && typeof body.detail === "string") detail = body.detail;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(resp.status, detail);
    }
    return (await resp.json()) as T;
  }

  getElection(): Promise<ElectionDescriptor> {
    return this.request("/election");
  }

  castVote(candidateIndex: number): Promise<BallotAck> {
    return this.request("/votes", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ candidate_index: candidateIndex }),
    });
  }

  getCenterSummary(j: number): Promise<CenterSummary> {
    return this.request(`/cc/${j}/summary`);
  }

  async getAllSummaries(nCc: number): Promise<CenterSummary[]> {
    const jobs = [];
    for (let j = 1; j <= nCc; j++) jobs.push(this.getCenterSummary(j));
    return Promise.all(jobs);
  }

  tally(centers?: number[]): Promise<TallyResult> {
    return this.request("/tally", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(centers ? { centers } : {}),
    });
  }

  verify(): Promise<VerifyReport> {
    return this.request("/verify");
  }
}
