// DOM glue: renders a SessionView and wires buttons to the client.  The view
// re-renders only from authoritative server responses; errors (including 409
// witnesses) land in a banner without touching session state.

import { WorkbenchClient, WorkbenchError, type SessionJson } from "./api.js";
import { validateInRange } from "./rational.js";
import { buildView, type SessionView } from "./viewmodel.js";

interface AppElements {
  root: HTMLElement;
  banner: HTMLElement;
  diagram: HTMLElement;
}

function el(tag: string, className: string, text?: string): HTMLElement {
  const node = document.createElement(tag);
  node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function renderView(view: SessionView, elements: AppElements, actions: Record<string, () => void>): void {
  const root = elements.root;
  root.replaceChildren();

  const header = el("div", "header", `${view.title}  a = ${view.edgeLength}`);
  root.appendChild(header);

  const invPanel = el("dl", "invariants");
  for (const row of view.invariants) {
    invPanel.appendChild(el("dt", "inv-name", row.name));
    invPanel.appendChild(el("dd", "inv-value", row.value));
  }
  root.appendChild(invPanel);

  const badges = el("div", "badges");
  for (const b of view.badges) {
    const node = el("span", `badge badge-${b.status}`, `${b.side}: ${b.status}`);
    node.title = b.witness;
    badges.appendChild(node);
  }
  root.appendChild(badges);

  if (view.budget !== null) {
    const gauge = el("div", "budget");
    gauge.appendChild(el("span", "budget-verdict", view.budget.verdict));
    gauge.appendChild(el("span", "budget-room", `room ${view.budget.l2}`));
    gauge.appendChild(el("span", "budget-bound", `bound ${view.budget.boundText}`));
    if (view.budget.note) gauge.appendChild(el("span", "budget-note", view.budget.note));
    root.appendChild(gauge);
  }

  const bar = el("div", "actions");
  const buttons: [string, keyof SessionView["availability"]][] = [
    ["mutate left", "mutateLeft"],
    ["mutate right", "mutateRight"],
    ["antiflip", "antiflip"],
    ["flip", "flip"],
    ["undo", "undo"],
    ["redo", "redo"],
  ];
  for (const [label, key] of buttons) {
    const button = el("button", `act act-${key}`, label) as HTMLButtonElement;
    button.disabled = !view.availability[key];
    const handler = actions[key];
    if (handler) button.addEventListener("click", handler);
    bar.appendChild(button);
  }
  root.appendChild(bar);
  root.appendChild(el("div", "history", `step ${view.historyPosition} (${view.label})`));
}

export class ExplorerApp {
  private sessionId: string | null = null;

  constructor(
    private readonly client: WorkbenchClient,
    private readonly elements: AppElements,
    private readonly promptRational: (cap: string) => string | null = (cap) =>
      window.prompt(`parameter in (0, ${cap})`),
  ) {}

  async open(payload: Parameters<WorkbenchClient["createSession"]>[0]): Promise<void> {
    this.sessionId = await this.client.createSession(payload);
    await this.refresh(await this.client.getSession(this.sessionId));
  }

  private async refresh(state: SessionJson): Promise<void> {
    this.elements.banner.textContent = "";
    const view = buildView(state);
    renderView(view, this.elements, {
      mutateLeft: () => void this.perform((id) => this.client.mutate(id, "left")),
      mutateRight: () => void this.perform((id) => this.client.mutate(id, "right")),
      antiflip: () => void this.performWithParam(state.bounds[1], (id, a) => this.client.antiflip(id, a)),
      flip: () => void this.performWithParam(state.bounds[0], (id, a) => this.client.flip(id, a)),
      undo: () => void this.perform((id) => this.client.undo(id)),
      redo: () => void this.perform((id) => this.client.redo(id)),
    });
    this.elements.diagram.innerHTML = await this.client.renderSvg(state.id);
  }

  private async perform(action: (id: string) => Promise<SessionJson>): Promise<void> {
    if (this.sessionId === null) return;
    try {
      await this.refresh(await action(this.sessionId));
    } catch (err) {
      this.elements.banner.textContent =
        err instanceof WorkbenchError ? err.message : "connection lost; state unchanged";
    }
  }

  private async performWithParam(
    cap: string,
    action: (id: string, a: string) => Promise<SessionJson>,
  ): Promise<void> {
    const typed = this.promptRational(cap);
    if (typed === null) return;
    const checked = validateInRange(typed, cap);
    if (!checked.ok) {
      this.elements.banner.textContent = checked.reason;
      return;
    }
    await this.perform((id) => action(id, checked.wire));
  }
}

export function mount(baseUrl: string, container: HTMLElement): ExplorerApp {
  const banner = el("div", "banner");
  const root = el("div", "session");
  const diagram = el("div", "diagram");
  container.replaceChildren(banner, root, diagram);
  return new ExplorerApp(new WorkbenchClient(baseUrl), { root, banner, diagram });
}
