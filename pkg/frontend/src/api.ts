/**
 * Typed client for the tutoring service.  Every method is one HTTP call;
 * the UI performs no fluent math of its own.
 */
import { TripleWire, WireTerm } from "./terms.js";

export interface PendingIntervention {
  id: string;
  trigger: string;
  level: number;
  payload: string;
  max_level: number;
}

export interface OntologyView {
  initial: TripleWire[];
  asserted: TripleWire[];
}

export interface StepTab {
  id: string;
  title: string;
  predicates: string[];
}

export interface FluentView {
  kind: string;
  args: WireTerm[];
}

export interface ActionResponse {
  seq: number;
  pending: PendingIntervention[];
}

export interface GlossaryEntry {
  term: string;
  definition: string;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
    readonly reason?: string,
  ) {
    super(message);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class Client {
  constructor(
    private readonly base: string = "",
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: { "Content-Type": "application/json" } };
    if (body !== undefined) init.body = JSON.stringify(body);
    const response = await this.fetchFn(this.base + path, init);
    if (!response.ok) {
      let code = "http-" + response.status;
      let message = response.statusText;
      let reason: string | undefined;
      try {
        const payload = await response.json();
        if (payload && payload.error) {
          code = payload.error.code ?? code;
          message = payload.error.message ?? message;
          reason = payload.error.reason;
        }
      } catch {
        // non-JSON error body; keep the status line
      }
      throw new ApiError(response.status, code, message, reason);
    }
    return (await response.json()) as T;
  }

  async createProject(kb: string): Promise<string> {
    const body = await this.request<{ id: string }>("POST", "/projects", { kb });
    return body.id;
  }

  listProjects(): Promise<string[]> {
    return this.request("GET", "/projects");
  }

  submitAction(project: string, kind: string, args: WireTerm[], actor = "learner"): Promise<ActionResponse> {
    return this.request("POST", `/projects/${encodeURIComponent(project)}/actions`, { kind, args, actor });
  }

  fluents(project: string, kind?: string): Promise<FluentView[]> {
    const query = kind ? `?kind=${encodeURIComponent(kind)}` : "";
    return this.request("GET", `/projects/${encodeURIComponent(project)}/fluents${query}`);
  }

  ontology(project: string): Promise<OntologyView> {
    return this.request("GET", `/projects/${encodeURIComponent(project)}/ontology`);
  }

  interventions(project: string): Promise<PendingIntervention[]> {
    return this.request("GET", `/projects/${encodeURIComponent(project)}/interventions`);
  }

  steps(): Promise<StepTab[]> {
    return this.request("GET", "/config/steps");
  }

  glossary(term: string, project?: string, actor = "learner"): Promise<GlossaryEntry> {
    const params = new URLSearchParams();
    if (project) {
      params.set("project", project);
      params.set("actor", actor);
    }
    const query = params.size ? "?" + params.toString() : "";
    return this.request("GET", `/glossary/${encodeURIComponent(term)}${query}`);
  }
}
