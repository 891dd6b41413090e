/**
 * Browser bootstrap: load a pattern document from the `?data=` query
 * parameter, the default sample path, or a picked local file, and mount
 * the explorer.
 */
import { Explorer } from "./dom.js";

const DEFAULT_DATA = "sample-data/walkthrough_patterns.json";

async function boot(): Promise<void> {
  const mount = document.getElementById("explorer");
  if (!mount) throw new Error("missing #explorer element");
  const explorer = new Explorer(mount);

  const picker = document.getElementById("file-picker") as HTMLInputElement | null;
  picker?.addEventListener("change", async () => {
    const file = picker.files?.[0];
    if (file) explorer.load(await file.text());
  });

  const url = new URLSearchParams(window.location.search).get("data") ?? DEFAULT_DATA;
  try {
    const response = await fetch(url);
    if (!response.ok) throw new Error(`${response.status} ${response.statusText}`);
    explorer.load(await response.text());
  } catch (error) {
    explorer.load(`{"invalid": ${JSON.stringify(String(error))}}`);
  }
}

boot();
