/**
 * Intervention panel state machine (pure, no DOM, no fetch).
 *
 * The server decides what is offerable (GET /interventions).  The panel's
 * only job is to acknowledge each offer with an `intervene` action, making
 * it a live card whose buttons (dismiss / more help) become possible, and
 * to mirror the server-confirmed live set back into cards.  All
 * scaffolding decisions (levels, blocking, triggers) stay server-side.
 */
import { FluentView, PendingIntervention } from "./api.js";
import { WireTerm, isSym, sym } from "./terms.js";

export interface Card {
  id: string;
  trigger: string;
  level: number;
  payload: string;
  maxLevel: number;
}

/** Presentation mapping: least intrusive renders as a sidebar hint, the
 * top level as a modal. */
export type Presentation = "hint" | "panel" | "modal";

export function presentation(card: Card): Presentation {
  if (card.level >= card.maxLevel) return "modal";
  return card.level === 1 ? "hint" : "panel";
}

export interface LiveKey {
  id: string;
  trigger: string;
  level: number;
}

export function liveKeyFromFluent(fluent: FluentView): LiveKey | null {
  if (fluent.kind !== "live_intervention" || fluent.args.length !== 3) return null;
  const [ident, trigger, level] = fluent.args;
  if (!isSym(ident) || !isSym(trigger) || typeof level !== "number") return null;
  return { id: ident.s, trigger: trigger.s, level };
}

export function interveneArgs(offer: PendingIntervention): WireTerm[] {
  return [sym(offer.id), sym(offer.trigger), offer.level, sym("ui")];
}

export function dismissArgs(card: Card): WireTerm[] {
  return [sym(card.trigger), card.level];
}

export function moreHelpArgs(card: Card): WireTerm[] {
  return [sym(card.id), sym(card.trigger), card.level];
}

const cacheKey = (id: string, level: number) => `${id}@${level}`;

export class InterventionPanel {
  private payloads = new Map<string, PendingIntervention>();
  private acknowledging = new Set<string>();

  /**
   * Offers that still need an acknowledging `intervene`.  Payload text is
   * remembered so the card can render it once the offer is live.
   */
  toAcknowledge(pending: PendingIntervention[]): PendingIntervention[] {
    const out: PendingIntervention[] = [];
    for (const offer of pending) {
      const key = cacheKey(offer.id, offer.level);
      this.payloads.set(key, offer);
      if (!this.acknowledging.has(key)) {
        this.acknowledging.add(key);
        out.push(offer);
      }
    }
    return out;
  }

  /** An acknowledgement settled (either way): allow future re-offers. */
  acknowledged(offer: PendingIntervention): void {
    this.acknowledging.delete(cacheKey(offer.id, offer.level));
  }

  /** Map the server-confirmed live set into renderable cards. */
  cards(liveFluents: FluentView[]): Card[] {
    const cards: Card[] = [];
    for (const fluent of liveFluents) {
      const key = liveKeyFromFluent(fluent);
      if (key === null) continue;
      const cached = this.payloads.get(cacheKey(key.id, key.level));
      cards.push({
        id: key.id,
        trigger: key.trigger,
        level: key.level,
        payload: cached?.payload ?? "(guidance pending)",
        maxLevel: cached?.max_level ?? key.level,
      });
    }
    cards.sort((a, b) => (a.id < b.id ? -1 : a.id > b.id ? 1 : a.level - b.level));
    return cards;
  }
}
