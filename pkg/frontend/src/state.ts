/**
 * The view model and its pure update functions.  Only server-confirmed
 * state is stored; nothing here anticipates what a fluent will say.
 */
import { OntologyView, PendingIntervention, StepTab } from "./api.js";
import { Card } from "./panel.js";

export interface ViewModel {
  project: string | null;
  activeTab: string | null;
  steps: StepTab[];
  ontology: OntologyView;
  pending: PendingIntervention[];
  cards: Card[];
  glossary: Map<string, string>;
  toast: string | null;
}

export function emptyViewModel(): ViewModel {
  return {
    project: null,
    activeTab: null,
    steps: [],
    ontology: { initial: [], asserted: [] },
    pending: [],
    cards: [],
    glossary: new Map(),
    toast: null,
  };
}

export function withSteps(vm: ViewModel, steps: StepTab[]): ViewModel {
  const activeTab = vm.activeTab ?? (steps.length ? steps[0].id : null);
  return { ...vm, steps, activeTab };
}

export function withProject(vm: ViewModel, project: string | null): ViewModel {
  if (project === vm.project) return vm;
  return {
    ...vm,
    project,
    ontology: { initial: [], asserted: [] },
    pending: [],
    cards: [],
    toast: null,
  };
}

export function withOntology(vm: ViewModel, ontology: OntologyView): ViewModel {
  return { ...vm, ontology };
}

export function withPending(vm: ViewModel, pending: PendingIntervention[]): ViewModel {
  return { ...vm, pending };
}

export function withCards(vm: ViewModel, cards: Card[]): ViewModel {
  return { ...vm, cards };
}

export function withTab(vm: ViewModel, tab: string): ViewModel {
  return { ...vm, activeTab: tab };
}

export function withGlossaryEntry(vm: ViewModel, term: string, definition: string): ViewModel {
  const glossary = new Map(vm.glossary);
  glossary.set(term, definition);
  return { ...vm, glossary };
}

export function withToast(vm: ViewModel, toast: string | null): ViewModel {
  return { ...vm, toast };
}

/** A 404 on any project route means the project is gone: back to the list. */
export function afterProjectLost(vm: ViewModel): ViewModel {
  return withProject(vm, null);
}
