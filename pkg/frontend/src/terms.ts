/**
 * Wire-level terms, mirroring the server's encoding: numbers and strings
 * are bare JSON, symbols are {s}, variables {v}, triples {t}, other
 * compounds {c}.
 */

export type WireTerm =
  | number
  | string
  | { s: string }
  | { v: string }
  | { t: [WireTerm, WireTerm, WireTerm] }
  | { c: [string, ...WireTerm[]] };

export interface TripleWire {
  subject: WireTerm;
  predicate: WireTerm;
  object: WireTerm;
}

export function sym(name: string): WireTerm {
  return { s: name };
}

export function tripleTerm(subject: WireTerm, predicate: WireTerm, object: WireTerm): WireTerm {
  return { t: [subject, predicate, object] };
}

export function isSym(term: WireTerm): term is { s: string } {
  return typeof term === "object" && term !== null && "s" in term;
}

/** Human-readable rendering: symbols bare, strings quoted, the rest terse. */
export function displayTerm(term: WireTerm): string {
  if (typeof term === "number") return String(term);
  if (typeof term === "string") return JSON.stringify(term);
  if ("s" in term) return term.s;
  if ("v" in term) return "?" + term.v;
  if ("t" in term) return "(" + term.t.map(displayTerm).join(" ") + ")";
  return term.c[0] + "(" + term.c.slice(1).map(displayTerm).join(", ") + ")";
}

const INTEGER = /^-?\d+$/;
const QUOTED = /^"(.*)"$/s;

/**
 * Interpret one form field using the seed-file convention: quoted text is
 * a string, a bare integer is a number, anything else is a symbol.
 */
export function parseComponent(input: string): WireTerm {
  const trimmed = input.trim();
  const quoted = QUOTED.exec(trimmed);
  if (quoted) return quoted[1];
  if (INTEGER.test(trimmed)) return Number(trimmed);
  return sym(trimmed);
}

export function tripleFromForm(subject: string, predicate: string, object: string): WireTerm {
  return tripleTerm(sym(subject.trim()), sym(predicate.trim()), parseComponent(object));
}

export function displayTriple(triple: TripleWire): string {
  return `${displayTerm(triple.subject)} ${displayTerm(triple.predicate)} ${displayTerm(triple.object)}`;
}
