/**
 * Application controller: wires the API client, the intervention panel,
 * and the action queue into the view model.  No DOM access here, so the
 * whole steering loop is testable headlessly; rendering subscribes via
 * the onChange callback.
 */
import { ActionResponse, ApiError, Client, PendingIntervention } from "./api.js";
import { FocusTracker } from "./focus.js";
import { Card, InterventionPanel, dismissArgs, interveneArgs, moreHelpArgs } from "./panel.js";
import { ActionQueue } from "./queue.js";
import {
  ViewModel,
  afterProjectLost,
  emptyViewModel,
  withCards,
  withGlossaryEntry,
  withOntology,
  withPending,
  withProject,
  withSteps,
  withTab,
  withToast,
} from "./state.js";
import { WireTerm, tripleFromForm } from "./terms.js";

interface QueuedAction {
  kind: string;
  args: WireTerm[];
  actor: string;
}

export interface AppOptions {
  actor?: string;
  onChange?: (vm: ViewModel) => void;
  focusDelayMs?: number;
}

export class App {
  vm: ViewModel = emptyViewModel();
  readonly panel = new InterventionPanel();
  readonly queue: ActionQueue<QueuedAction, ActionResponse>;
  readonly focus: FocusTracker;
  private readonly actor: string;
  private readonly onChange: (vm: ViewModel) => void;
  private refreshing = false;

  constructor(private readonly client: Client, options: AppOptions = {}) {
    this.actor = options.actor ?? "learner";
    this.onChange = options.onChange ?? (() => undefined);
    this.queue = new ActionQueue((item) => {
      const project = this.vm.project;
      if (project === null) return Promise.reject(new Error("no open project"));
      return this.client.submitAction(project, item.kind, item.args, item.actor);
    });
    this.focus = new FocusTracker((focusId) => {
      void this.submit("concept_focus", [{ s: focusId }]).catch(() => undefined);
    }, options.focusDelayMs ?? 400);
  }

  private publish(vm: ViewModel): void {
    this.vm = vm;
    this.onChange(vm);
  }

  private fail(error: unknown): void {
    if (error instanceof ApiError) {
      if (error.status === 404 && error.code === "unknown-project") {
        this.publish(withToast(afterProjectLost(this.vm), "project is gone; returning to the list"));
        return;
      }
      const reason = error.reason ? ` (${error.reason})` : "";
      this.publish(withToast(this.vm, `${error.code}${reason}: ${error.message}`));
      return;
    }
    this.publish(withToast(this.vm, String(error)));
  }

  // -- lifecycle ---------------------------------------------------------

  async start(): Promise<void> {
    this.publish(withSteps(this.vm, await this.client.steps()));
  }

  listProjects(): Promise<string[]> {
    return this.client.listProjects();
  }

  async createProject(kb: string): Promise<string> {
    const id = await this.client.createProject(kb);
    await this.openProject(id);
    return id;
  }

  async openProject(id: string): Promise<void> {
    this.publish(withProject(this.vm, id));
    this.focus.reset(null);
    await this.refresh();
  }

  closeProject(): void {
    this.publish(withProject(this.vm, null));
  }

  // -- the polling loop ----------------------------------------------------

  /**
   * One round: read pending offers, acknowledge the new ones with an
   * `intervene` each (turning them into live cards), then mirror the
   * server-confirmed live set and ontology into the view model.
   */
  async refresh(): Promise<void> {
    if (this.refreshing || this.vm.project === null) return;
    this.refreshing = true;
    try {
      const project = this.vm.project;
      const pending = await this.client.interventions(project);
      await this.acknowledge(pending);
      if (this.vm.project !== project) return; // switched away mid-poll
      const [live, ontology] = await Promise.all([
        this.client.fluents(project, "live_intervention"),
        this.client.ontology(project),
      ]);
      this.publish(
        withCards(withOntology(withPending(this.vm, pending), ontology), this.panel.cards(live)),
      );
    } catch (error) {
      this.fail(error);
    } finally {
      this.refreshing = false;
    }
  }

  private async acknowledge(pending: PendingIntervention[]): Promise<void> {
    const offers = this.panel.toAcknowledge(pending);
    for (const offer of offers) {
      void this.queue
        .enqueue({ kind: "intervene", args: interveneArgs(offer), actor: "ui" })
        .catch(() => undefined) // e.g. already-live after a race; harmless
        .finally(() => this.panel.acknowledged(offer));
    }
    await this.queue.drain();
  }

  // -- gestures: each maps to exactly one API action or query ----------------

  private async submit(kind: string, args: WireTerm[], actor?: string): Promise<ActionResponse> {
    return this.queue.enqueue({ kind, args, actor: actor ?? this.actor });
  }

  async submitTriple(subject: string, predicate: string, object: string): Promise<boolean> {
    try {
      const response = await this.submit("add_data", [tripleFromForm(subject, predicate, object)]);
      this.publish(withToast(withPending(this.vm, response.pending), null));
      await this.acknowledge(response.pending);
      await this.refresh();
      return true;
    } catch (error) {
      this.fail(error);
      return false;
    }
  }

  async deleteTriple(triple: WireTerm): Promise<void> {
    try {
      await this.submit("delete_data", [triple]);
      await this.refresh();
    } catch (error) {
      this.fail(error);
    }
  }

  async dismissCard(card: Card): Promise<void> {
    try {
      await this.submit("dismiss_intervention", dismissArgs(card));
      await this.refresh();
    } catch (error) {
      this.fail(error);
    }
  }

  async moreHelp(card: Card): Promise<void> {
    try {
      await this.submit("request_intervention_increase", moreHelpArgs(card));
      await this.refresh(); // the re-poll acknowledges the next level
    } catch (error) {
      this.fail(error);
    }
  }

  async switchTab(tabId: string): Promise<void> {
    this.publish(withTab(this.vm, tabId));
    this.focus.reset(tabId);
    try {
      await this.submit("navigate_to_step", [{ s: tabId }]);
    } catch (error) {
      this.fail(error);
    }
  }

  fieldFocus(focusId: string): void {
    this.focus.report(focusId);
  }

  async lookupGlossary(term: string): Promise<string | null> {
    try {
      const entry = await this.client.glossary(term, this.vm.project ?? undefined, this.actor);
      this.publish(withGlossaryEntry(this.vm, entry.term, entry.definition));
      return entry.definition;
    } catch (error) {
      this.fail(error);
      return null;
    }
  }
}
