// Contract test against the real workbench server: every displayed string is
// byte-for-byte the server's, and button availability mirrors classification.

import { spawn, type ChildProcess } from "node:child_process";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { WorkbenchClient, WorkbenchError, type SessionJson } from "../src/api.js";
import { buildView } from "../src/viewmodel.js";

const PORT = 8790 + (process.pid % 100);
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess;

async function waitForServer(): Promise<void> {
  for (let i = 0; i < 100; i++) {
    try {
      const res = await fetch(`${BASE}/session/probe`);
      if (res.status === 404) return;
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 100));
  }
  throw new Error("workbench server did not come up");
}

beforeAll(async () => {
  server = spawn("python3", ["-m", "atoric.cli", "serve", "--bind", `127.0.0.1:${PORT}`], {
    stdio: "ignore",
  });
  await waitForServer();
}, 30000);

afterAll(() => {
  server?.kill();
});

/** The view must be a pure relabeling: exact strings equal, no reformatting. */
function assertVerbatim(state: SessionJson): void {
  const view = buildView(state);
  expect(view.edgeLength).toBe(state.wedge.a);
  expect(view.bounds[0]).toBe(state.bounds[0]);
  expect(view.bounds[1]).toBe(state.bounds[1]);
  expect(view.invariants[0]?.value).toBe(String(state.invariants.sigma));
  expect(view.invariants[1]?.value).toBe(String(state.invariants.Delta));
  expect(view.invariants[2]?.value).toBe(String(state.invariants.Omega));
  if (state.budget !== null) {
    expect(view.budget?.l2).toBe(state.budget.l2);
    expect(view.budget?.verdict).toBe(state.budget.verdict);
    expect(view.budget?.partialSums).toEqual(state.budget.partial_sums);
  } else {
    expect(view.budget).toBeNull();
  }
  // availability mirrors server classification, nothing else
  expect(view.availability.mutateLeft).toBe(state.classify.left.status === "mutable");
  expect(view.availability.mutateRight).toBe(state.classify.right.status === "mutable");
  expect(view.badges[0].witness).toBe(state.classify.left.witness);
  expect(view.badges[1].witness).toBe(state.classify.right.witness);
}

describe("scripted quintic session", () => {
  const client = new WorkbenchClient(BASE);

  it("keeps the view verbatim through antiflip, mutations and undos", async () => {
    const id = await client.createSession({
      chain: { left: [4], c: 3, right: [] },
      a: "3/2",
      l1: "1",
      l2: "1",
    });

    const states: SessionJson[] = [];
    let state = await client.getSession(id);
    assertVerbatim(state);
    expect(state.invariants.sigma).toBe(3);
    expect(buildView(state).availability.antiflip).toBe(true);
    states.push(state);

    state = await client.antiflip(id, "1/10");
    assertVerbatim(state);
    expect(state.wedge).toMatchObject({ p1: 1, q1: 0, p2: 5, q2: 3, c: 1, a: "1/10" });
    expect(state.bounds).toEqual(["5/2", "9/10"]);
    expect(state.budget?.verdict).toBe("FitsForever");
    states.push(state);

    for (let step = 0; step < 5; step++) {
      expect(buildView(state).availability.mutateRight).toBe(true);
      state = await client.mutate(id, "right");
      assertVerbatim(state);
      states.push(state);
    }
    // the orbit reached the sixth Mori pair
    expect([state.wedge.p1, state.wedge.q1]).toEqual([254, 165]);
    expect([state.wedge.p2, state.wedge.q2]).toEqual([665, 432]);

    const mori = await client.mori(id, 5);
    expect(mori.pairs.slice(0, 2)).toEqual([
      [254, 165],
      [665, 432],
    ]);

    // two undos: byte-identical replay of earlier states
    let undone = await client.undo(id);
    assertVerbatim(undone);
    expect(undone.wedge).toEqual(states[5]!.wedge);
    expect(undone.bounds).toEqual(states[5]!.bounds);
    undone = await client.undo(id);
    assertVerbatim(undone);
    expect(undone.wedge).toEqual(states[4]!.wedge);
    expect(undone.bounds).toEqual(states[4]!.bounds);
    expect(buildView(undone).availability.redo).toBe(true);
  }, 30000);

  it("surfaces 409 witnesses without mutating state", async () => {
    const id = await client.createSession({
      chain: { left: [4], c: 3, right: [] },
      a: "3/2",
      l1: "1",
      l2: "1",
    });
    await client.antiflip(id, "1/10");
    const before = await client.getSession(id);
    expect(buildView(before).availability.mutateLeft).toBe(false);

    let threw = false;
    try {
      await client.mutate(id, "left");
    } catch (err) {
      threw = true;
      expect(err).toBeInstanceOf(WorkbenchError);
      const detail = (err as WorkbenchError).detail;
      expect(detail.status).toBe(409);
      expect(detail.error).toContain("immutable");
      expect(detail.witness).toBeTruthy();
    }
    expect(threw).toBe(true);

    const after = await client.getSession(id);
    expect(after).toEqual(before);
  }, 30000);

  it("serves the SVG diagram", async () => {
    const id = await client.createSession({
      wedge: { p1: 1, q1: 0, p2: 5, q2: 3, c: 1, a: "1/10" },
    });
    const svg = await client.renderSvg(id);
    expect(svg.startsWith("<svg ")).toBe(true);
    expect(svg).toContain("</svg>");
    // pure function of the state: a second fetch is byte-identical
    expect(await client.renderSvg(id)).toBe(svg);
  }, 30000);
});
