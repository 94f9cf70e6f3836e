/** Page bootstrap: preset picker wired to an Explorer instance. */

import { ApiClient } from "./api.js";
import { Explorer } from "./explorer.js";

const DEFAULT_SERVER = "http://127.0.0.1:7373";

export async function boot(root: HTMLElement, base?: string): Promise<Explorer> {
  const params = new URLSearchParams(window.location.search);
  const client = new ApiClient(base ?? params.get("server") ?? DEFAULT_SERVER);
  const picker = document.createElement("select");
  picker.className = "presets";
  const { presets } = await client.presets();
  for (const preset of presets) {
    const option = document.createElement("option");
    option.value = preset.name;
    option.textContent = `${preset.name} — ${preset.description}`;
    picker.appendChild(option);
  }
  const stage = document.createElement("div");
  stage.className = "stage";
  root.append(picker, stage);
  const explorer = new Explorer(client, stage);
  picker.addEventListener("change", () => void explorer.loadPreset(picker.value));
  await explorer.loadPreset(presets[0].name);
  return explorer;
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  void boot(document.getElementById("app")!);
}
