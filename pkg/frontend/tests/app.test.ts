import { describe, expect, it } from "vitest";

import { ApiError, Client, PendingIntervention } from "../src/api.js";
import { App } from "../src/app.js";

/** A scriptable stand-in for the HTTP client: pending offers become live
 * when an intervene action is submitted, mirroring the server's loop. */
class FakeClient {
  pending: PendingIntervention[] = [];
  live: { id: string; trigger: string; level: number }[] = [];
  actions: { kind: string; args: unknown[]; actor: string }[] = [];
  failNext: ApiError | null = null;

  async steps() {
    return [{ id: "losses", title: "Losses", predicates: ["type"] }];
  }

  async listProjects() {
    return ["p1"];
  }

  async createProject(_kb: string) {
    return "p1";
  }

  async interventions(_project: string) {
    return [...this.pending];
  }

  async fluents(_project: string, kind?: string) {
    if (kind !== "live_intervention") return [];
    return this.live.map((l) => ({ kind: "live_intervention", args: [{ s: l.id }, { s: l.trigger }, l.level] }));
  }

  async ontology(_project: string) {
    return { initial: [], asserted: [] };
  }

  async glossary(term: string) {
    if (term === "hazard") return { term, definition: "a dangerous state" };
    throw new ApiError(404, "unknown-term", "no entry");
  }

  async submitAction(_project: string, kind: string, args: unknown[], actor = "learner") {
    if (this.failNext) {
      const failure = this.failNext;
      this.failNext = null;
      throw failure;
    }
    this.actions.push({ kind, args, actor });
    if (kind === "intervene") {
      const [ident, trigger, level] = args as [{ s: string }, { s: string }, number];
      this.live.push({ id: ident.s, trigger: trigger.s, level });
      this.pending = this.pending.filter((p) => !(p.id === ident.s && p.level === level));
    }
    return { seq: this.actions.length, pending: [...this.pending] };
  }
}

const offer = (id: string, level: number, payload: string): PendingIntervention => ({
  id,
  trigger: "q1",
  level,
  payload,
  max_level: 3,
});

function build() {
  const fake = new FakeClient();
  const app = new App(fake as unknown as Client, { actor: "tester" });
  return { fake, app };
}

describe("App", () => {
  it("acknowledges pending offers into live cards on refresh", async () => {
    const { fake, app } = build();
    await app.start();
    fake.pending = [offer("help-a", 1, "gentle hint")];
    await app.openProject("p1");
    expect(fake.actions.map((a) => a.kind)).toEqual(["intervene"]);
    expect(fake.actions[0].actor).toBe("ui");
    expect(app.vm.cards).toHaveLength(1);
    expect(app.vm.cards[0]).toMatchObject({ id: "help-a", level: 1, payload: "gentle hint" });
  });

  it("dismiss maps to exactly one dismiss_intervention action", async () => {
    const { fake, app } = build();
    fake.pending = [offer("help-a", 1, "hint")];
    await app.openProject("p1");
    const card = app.vm.cards[0];
    fake.live = [];
    await app.dismissCard(card);
    const kinds = fake.actions.map((a) => a.kind);
    expect(kinds.filter((k) => k === "dismiss_intervention")).toHaveLength(1);
    expect(app.vm.cards).toHaveLength(0);
  });

  it("more help requests an increase and re-polls", async () => {
    const { fake, app } = build();
    fake.pending = [offer("help-a", 1, "hint")];
    await app.openProject("p1");
    const card = app.vm.cards[0];
    // the server would retire live level 1 and offer level 2
    fake.live = [];
    fake.pending = [offer("help-a", 2, "stronger hint")];
    await app.moreHelp(card);
    expect(fake.actions.map((a) => a.kind)).toContain("request_intervention_increase");
    expect(app.vm.cards).toHaveLength(1);
    expect(app.vm.cards[0]).toMatchObject({ level: 2, payload: "stronger hint" });
  });

  it("shows the rejection reason on 409", async () => {
    const { fake, app } = build();
    await app.openProject("p1");
    fake.failNext = new ApiError(409, "not-possible", "blocked", "dismissed-at-or-above");
    const ok = await app.submitTriple("h1", "type", "Hazard");
    expect(ok).toBe(false);
    expect(app.vm.toast).toContain("dismissed-at-or-above");
  });

  it("a 404 returns to the project list", async () => {
    const { fake, app } = build();
    await app.openProject("p1");
    fake.failNext = new ApiError(404, "unknown-project", "gone");
    await app.submitTriple("h1", "type", "Hazard");
    expect(app.vm.project).toBeNull();
  });

  it("tab switches emit navigate_to_step", async () => {
    const { fake, app } = build();
    await app.start();
    await app.openProject("p1");
    await app.switchTab("losses");
    const nav = fake.actions.find((a) => a.kind === "navigate_to_step");
    expect(nav).toBeDefined();
    expect(nav!.args).toEqual([{ s: "losses" }]);
    expect(app.vm.activeTab).toBe("losses");
  });

  it("glossary lookups cache the definition", async () => {
    const { app } = build();
    await app.openProject("p1");
    expect(await app.lookupGlossary("hazard")).toBe("a dangerous state");
    expect(app.vm.glossary.get("hazard")).toBe("a dangerous state");
    expect(await app.lookupGlossary("nonsense")).toBeNull();
    expect(app.vm.toast).toContain("unknown-term");
  });
});
