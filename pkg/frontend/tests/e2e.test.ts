// @vitest-environment happy-dom
//
// End-to-end: spawn the real backend and drive the UI through DOM clicks.

import { ChildProcess, spawn } from "node:child_process";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";
import { Explorer } from "../src/explorer.js";
import { boot } from "../src/main.js";

let server: ChildProcess;
let base: string;

beforeAll(async () => {
  server = spawn("python3", ["-m", "mwb.cli", "serve", "--port", "0"], {
    stdio: ["ignore", "pipe", "inherit"],
  });
  base = await new Promise<string>((resolve, reject) => {
    const timer = setTimeout(() => reject(new Error("server did not start")), 15000);
    server.stdout!.on("data", (chunk: Buffer) => {
      const match = /listening on (http:\/\/[\d.]+:\d+)/.exec(chunk.toString());
      if (match) {
        clearTimeout(timer);
        resolve(match[1]);
      }
    });
    server.on("exit", (code) => reject(new Error(`server exited with ${code}`)));
  });
}, 20000);

afterAll(() => {
  server.kill();
});

async function until(cond: () => boolean, ms = 5000): Promise<void> {
  const deadline = Date.now() + ms;
  while (!cond()) {
    if (Date.now() > deadline) throw new Error("condition never became true");
    await new Promise((r) => setTimeout(r, 25));
  }
}

function panelText(root: HTMLElement): string[] {
  return [...root.querySelectorAll("ul.variables li")].map((li) => li.textContent ?? "");
}

function click(root: HTMLElement, vertex: number): void {
  const group = root.querySelector(`g[data-vertex="${vertex}"]`)!;
  group.dispatchEvent(new MouseEvent("click", { bubbles: true }));
}

describe("API client against the live server", () => {
  it("creates, mutates and undoes a session", async () => {
    const client = new ApiClient(base);
    const created = await client.createSession({ preset: "a3-bfz" });
    const mutated = await client.mutate(created.id, 1);
    expect(mutated.variables[0].text).toBe("(x2 + x3)/x1");
    expect(mutated.variables[0].alias).toBe("D_{2,3}");
    const undone = await client.undo(created.id);
    expect(undone).toEqual(created);
  });

  it("surfaces server errors with their status", async () => {
    const client = new ApiClient(base);
    const created = await client.createSession({ preset: "a3-bfz" });
    await expect(client.mutate(created.id, 4)).rejects.toMatchObject({ status: 409 });
    await expect(client.mutate(created.id, 99)).rejects.toMatchObject({ status: 400 });
    await expect(client.getSession("nope")).rejects.toBeInstanceOf(ApiError);
  });
});

describe("explorer UI against the live server", () => {
  it("clicking vertex 1 mutates and clicking again restores", async () => {
    const root = document.createElement("div");
    document.body.appendChild(root);
    const explorer = await boot(root, base);
    expect(explorer.state!.preset).toBe("a3-bfz");
    expect(panelText(root)[0]).toBe("1: x1 = D_{1,2}");
    click(root, 1);
    await until(() => panelText(root)[0].includes("(x2 + x3)/x1"));
    expect(panelText(root)[0]).toBe("1: (x2 + x3)/x1 = D_{2,3}");
    expect(explorer.state!.history).toEqual([1]);
    click(root, 1); // mutation is an involution
    await until(() => panelText(root)[0] === "1: x1 = D_{1,2}");
    expect(explorer.state!.history).toEqual([1, 1]);
  });

  it("renders frozen vertices as non-clickable squares", async () => {
    const root = document.createElement("div");
    document.body.appendChild(root);
    const explorer = await boot(root, base);
    await explorer.loadPreset("affine-a1-w4");
    const frozen = [...root.querySelectorAll('g[data-frozen="true"]')];
    expect(frozen.map((g) => g.getAttribute("data-vertex"))).toEqual(["3", "4"]);
    expect(root.querySelectorAll("g.vertex.frozen rect").length).toBe(2);
    const before = panelText(root);
    click(root, 3); // no handler attached: state must not change
    await new Promise((r) => setTimeout(r, 150));
    expect(panelText(root)).toEqual(before);
    expect(explorer.state!.history).toEqual([]);
    expect(root.querySelector(".notice")!.textContent).toBe("");
  });

  it("undo button pops the history", async () => {
    const root = document.createElement("div");
    document.body.appendChild(root);
    const explorer = await boot(root, base);
    click(root, 2);
    await until(() => explorer.state!.history.length === 1);
    (root.querySelector("button.undo") as HTMLButtonElement).click();
    await until(() => explorer.state!.history.length === 0);
    expect(panelText(root)[1]).toBe("2: x2 = D_{1,3}");
  });

  it("export and re-import reproduce the rendered view", async () => {
    const root = document.createElement("div");
    document.body.appendChild(root);
    const explorer = await boot(root, base);
    click(root, 1);
    await until(() => explorer.state!.history.length === 1);
    const exported = explorer.exportSeed();
    const texts = explorer.state!.variables.map((v) => v.text);
    const quiver = explorer.state!.quiver;
    await explorer.importSeed(exported);
    expect(explorer.state!.history).toEqual([]); // fresh session
    expect(explorer.state!.variables.map((v) => v.text)).toEqual(texts);
    expect(explorer.state!.quiver).toEqual(quiver);
  });
});
