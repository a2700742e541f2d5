// Pure projection of a server session response into display data.  Every
// exact value is kept as the server's verbatim string; the only computation
// here is picking which strings go where and which buttons are enabled.

import type { ClassifyEntry, SessionJson } from "./api.js";

export interface Badge {
  side: "left" | "right";
  status: ClassifyEntry["status"];
  witness: string;
}

export interface InvariantRow {
  name: string;
  value: string; // verbatim (stringified integers are exact)
}

export interface BudgetGauge {
  verdict: string;
  l2: string;
  boundText: string; // symbolic a + b*sqrt(d), never evaluated
  partialSums: string[];
  note: string;
}

export interface Availability {
  mutateLeft: boolean;
  mutateRight: boolean;
  antiflip: boolean;
  flip: boolean;
  undo: boolean;
  redo: boolean;
}

export interface SessionView {
  id: string;
  title: string;
  edgeLength: string; // wedge.a verbatim
  bounds: [string, string];
  invariants: InvariantRow[];
  badges: [Badge, Badge];
  budget: BudgetGauge | null;
  availability: Availability;
  historyPosition: string; // "cursor+1 / length"
  label: string;
}

function badge(side: "left" | "right", entry: ClassifyEntry): Badge {
  return { side, status: entry.status, witness: entry.witness };
}

export function buildView(s: SessionJson): SessionView {
  const w = s.wedge;
  const inv = s.invariants;
  const kPositive = inv.k_sign > 0;
  return {
    id: s.id,
    title: `Pi(${w.p1},${w.q1},${w.p2},${w.q2},${w.c})`,
    edgeLength: w.a,
    bounds: s.bounds,
    invariants: [
      { name: "sigma", value: String(inv.sigma) },
      { name: "Delta", value: String(inv.Delta) },
      { name: "Omega", value: String(inv.Omega) },
      { name: "K", value: inv.k_sign > 0 ? "+" : inv.k_sign < 0 ? "-" : "0" },
    ],
    badges: [badge("left", s.classify.left), badge("right", s.classify.right)],
    budget:
      s.budget === null
        ? null
        : {
            verdict: s.budget.verdict,
            l2: s.budget.l2,
            boundText: `${s.budget.bound.a} + ${s.budget.bound.b}*sqrt(${s.budget.bound.d})`,
            partialSums: s.budget.partial_sums,
            note: s.budget.note,
          },
    availability: {
      mutateLeft: s.classify.left.status === "mutable",
      mutateRight: s.classify.right.status === "mutable",
      antiflip: kPositive,
      flip: !kPositive && w.c === 1,
      undo: s.cursor > 0,
      redo: s.cursor + 1 < s.history_length,
    },
    historyPosition: `${s.cursor + 1} / ${s.history_length}`,
    label: s.label,
  };
}
