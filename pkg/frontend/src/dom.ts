/**
 * DOM rendering: a thin projection of the view model onto the page.
 * All behaviour lives in App; this layer only wires gestures to it.
 */
import { App } from "./app.js";
import { Card, presentation } from "./panel.js";
import { ViewModel } from "./state.js";
import { TripleWire, displayTerm, tripleTerm } from "./terms.js";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function clear(node: HTMLElement): void {
  while (node.firstChild) node.removeChild(node.firstChild);
}

export class View {
  private root: HTMLElement;

  constructor(private readonly app: App, rootId = "app") {
    const root = document.getElementById(rootId);
    if (!root) throw new Error(`no #${rootId} element`);
    this.root = root;
  }

  render(vm: ViewModel): void {
    clear(this.root);
    this.root.appendChild(this.header(vm));
    if (vm.toast) {
      this.root.appendChild(el("div", "toast", vm.toast));
    }
    if (vm.project === null) {
      this.root.appendChild(this.projectPicker());
      return;
    }
    this.root.appendChild(this.tabBar(vm));
    const layout = el("div", "layout");
    const main = el("main");
    main.appendChild(this.tripleForm(vm));
    main.appendChild(this.ontologyView(vm));
    layout.appendChild(main);
    const aside = el("aside");
    aside.appendChild(this.interventionPanel(vm));
    aside.appendChild(this.glossaryBox(vm));
    layout.appendChild(aside);
    this.root.appendChild(layout);
    const modal = vm.cards.find((card) => presentation(card) === "modal");
    if (modal) this.root.appendChild(this.modal(modal));
  }

  private header(vm: ViewModel): HTMLElement {
    const header = el("header");
    header.appendChild(el("h1", undefined, "Analysis tutor"));
    if (vm.project !== null) {
      header.appendChild(el("span", "project-id", vm.project));
      const back = el("button", "linkish", "projects");
      back.addEventListener("click", () => this.app.closeProject());
      header.appendChild(back);
    }
    return header;
  }

  private projectPicker(): HTMLElement {
    const box = el("section", "picker");
    box.appendChild(el("h2", undefined, "Projects"));
    const list = el("ul");
    box.appendChild(list);
    void this.app.listProjects().then((ids) => {
      for (const id of ids) {
        const item = el("li");
        const open = el("button", undefined, id);
        open.addEventListener("click", () => void this.app.openProject(id));
        item.appendChild(open);
        list.appendChild(item);
      }
    });
    const create = el("button", "primary", "New project");
    create.addEventListener("click", () => void this.app.createProject("demo-seed"));
    box.appendChild(create);
    return box;
  }

  private tabBar(vm: ViewModel): HTMLElement {
    const nav = el("nav", "tabs");
    for (const step of vm.steps) {
      const tab = el("button", step.id === vm.activeTab ? "tab active" : "tab", step.title);
      tab.addEventListener("click", () => void this.app.switchTab(step.id));
      nav.appendChild(tab);
    }
    return nav;
  }

  private tripleForm(vm: ViewModel): HTMLElement {
    const step = vm.steps.find((s) => s.id === vm.activeTab);
    const form = el("form", "triple-form");
    const subject = el("input");
    subject.placeholder = "subject";
    subject.name = "subject";
    const predicate = document.createElement("select");
    for (const p of step?.predicates ?? []) {
      const option = document.createElement("option");
      option.value = p;
      option.textContent = p;
      predicate.appendChild(option);
    }
    const object = el("input");
    object.placeholder = 'object (quote "strings")';
    object.name = "object";
    const submit = el("button", "primary", "Add");
    submit.type = "submit";
    for (const field of [subject, predicate, object]) {
      field.addEventListener("focus", () =>
        this.app.fieldFocus(`${vm.activeTab ?? "form"}:${(field as HTMLInputElement).name || "predicate"}`),
      );
      form.appendChild(field);
    }
    form.appendChild(submit);
    form.addEventListener("submit", (event) => {
      event.preventDefault();
      if (!subject.value.trim() || !object.value.trim() || !predicate.value) return;
      void this.app.submitTriple(subject.value, predicate.value, object.value).then((ok) => {
        if (ok) {
          subject.value = "";
          object.value = "";
        }
      });
    });
    return form;
  }

  private ontologyView(vm: ViewModel): HTMLElement {
    const section = el("section", "ontology");
    section.appendChild(el("h2", undefined, "Your model"));
    const asserted = el("ul", "asserted");
    for (const triple of vm.ontology.asserted) {
      asserted.appendChild(this.tripleRow(triple, true));
    }
    section.appendChild(asserted);
    section.appendChild(el("h3", undefined, "Seed knowledge"));
    const seed = el("ul", "seed");
    for (const triple of vm.ontology.initial) {
      seed.appendChild(this.tripleRow(triple, false));
    }
    section.appendChild(seed);
    return section;
  }

  private tripleRow(triple: TripleWire, deletable: boolean): HTMLElement {
    const row = el("li");
    row.appendChild(
      el("span", "triple", `${displayTerm(triple.subject)} ${displayTerm(triple.predicate)} ${displayTerm(triple.object)}`),
    );
    if (deletable) {
      const remove = el("button", "linkish", "delete");
      remove.addEventListener("click", () =>
        void this.app.deleteTriple(tripleTerm(triple.subject, triple.predicate, triple.object)),
      );
      row.appendChild(remove);
    }
    return row;
  }

  private interventionPanel(vm: ViewModel): HTMLElement {
    const panel = el("section", "interventions");
    panel.appendChild(el("h2", undefined, "Guidance"));
    for (const card of vm.cards) {
      if (presentation(card) === "modal") continue; // rendered as overlay
      panel.appendChild(this.card(card));
    }
    if (!vm.cards.length) panel.appendChild(el("p", "quiet", "Nothing to suggest right now."));
    return panel;
  }

  private card(card: Card): HTMLElement {
    const box = el("div", `card ${presentation(card)}`);
    box.dataset.id = card.id;
    box.dataset.level = String(card.level);
    box.appendChild(el("p", "payload", card.payload));
    const actions = el("div", "card-actions");
    const dismiss = el("button", undefined, "Dismiss");
    dismiss.addEventListener("click", () => void this.app.dismissCard(card));
    actions.appendChild(dismiss);
    if (card.level < card.maxLevel) {
      const more = el("button", undefined, "More help");
      more.addEventListener("click", () => void this.app.moreHelp(card));
      actions.appendChild(more);
    }
    box.appendChild(actions);
    return box;
  }

  private modal(card: Card): HTMLElement {
    const overlay = el("div", "overlay");
    overlay.appendChild(this.card(card));
    return overlay;
  }

  private glossaryBox(vm: ViewModel): HTMLElement {
    const box = el("section", "glossary");
    box.appendChild(el("h2", undefined, "Glossary"));
    const input = el("input");
    input.placeholder = "term, e.g. hazard";
    const lookup = el("button", undefined, "Look up");
    lookup.addEventListener("click", () => {
      if (input.value.trim()) void this.app.lookupGlossary(input.value.trim());
    });
    box.appendChild(input);
    box.appendChild(lookup);
    const entries = el("dl");
    for (const [term, definition] of vm.glossary) {
      entries.appendChild(el("dt", undefined, term));
      entries.appendChild(el("dd", undefined, definition));
    }
    box.appendChild(entries);
    return box;
  }
}
