import { api } from "../api";
import type { RunKind } from "../api";
import { runColor } from "../colors";
import { clear, h } from "../dom";
import type { Store } from "../state";

export async function reloadRuns(store: Store): Promise<void> {
  const runs = await api.listRuns();
  const state = store.get();
  const visible = runs.filter((r) => r.kind === state.benchmark).map((r) => r.id);
  const active = state.activeRunIds.filter((id) => visible.includes(id));
  store.update({
    runs,
    // newly uploaded runs of the current benchmark become active by default
    activeRunIds: active.length ? active : visible,
  });
}

export function renderFileManager(host: HTMLElement, store: Store): void {
  const state = store.get();
  clear(host);

  const errorBox = h("div", { class: "error-box", "data-role": "upload-error" });
  const nameInput = h("input", { type: "text", placeholder: "display name (defaults to filename)" });
  const fileInput = h("input", { type: "file" });
  const uploadButton = h("button", { class: "primary", type: "button" }, "Upload result file");

  uploadButton.addEventListener("click", async () => {
    const file = fileInput.files?.[0];
    errorBox.textContent = "";
    if (!file) {
      errorBox.textContent = "Choose a result file first.";
      return;
    }
    try {
      await api.uploadRun(store.get().benchmark as RunKind, nameInput.value.trim(), file);
      nameInput.value = "";
      fileInput.value = "";
      await reloadRuns(store);
    } catch (err) {
      errorBox.textContent = err instanceof Error ? err.message : String(err);
    }
  });

  const form = h(
    "div",
    { class: "upload-form" },
    fileInput,
    nameInput,
    uploadButton,
    errorBox,
  );

  const list = h("ul", { class: "run-list" });
  const runs = state.runs.filter((r) => r.kind === state.benchmark);
  if (!runs.length) {
    list.append(h("li", {}, h("span", { class: "empty-note" }, "No runs uploaded yet.")));
  }
  runs.forEach((run, index) => {
    const isActive = state.activeRunIds.includes(run.id);
    const checkbox = h("input", { type: "checkbox", title: "include in charts" }) as HTMLInputElement;
    checkbox.checked = isActive;
    checkbox.addEventListener("change", () => {
      const current = store.get().activeRunIds;
      store.update({
        activeRunIds: checkbox.checked
          ? [...current, run.id]
          : current.filter((id) => id !== run.id),
      });
    });

    const renameBtn = h("button", { class: "ghost", type: "button" }, "rename");
    renameBtn.addEventListener("click", async () => {
      const name = window.prompt(`New name for ${run.name}:`, run.name);
      if (!name || name === run.name) return;
      try {
        await api.renameRun(run.id, name);
        await reloadRuns(store);
      } catch (err) {
        errorBox.textContent = err instanceof Error ? err.message : String(err);
      }
    });

    const deleteBtn = h("button", { class: "ghost danger", type: "button" }, "delete");
    deleteBtn.addEventListener("click", async () => {
      try {
        await api.deleteRun(run.id);
        await reloadRuns(store);
      } catch (err) {
        errorBox.textContent = err instanceof Error ? err.message : String(err);
      }
    });

    const meta =
      run.kind === "sysbench"
        ? `${run.sampleCount ?? 0} samples`
        : `${run.queryCount ?? 0} queries`;

    list.append(
      h(
        "li",
        { class: isActive ? "active-run" : "", "data-run-id": run.id },
        checkbox,
        h("span", { class: "swatch", style: `background:${runColor(index)}` }),
        h("span", { class: "name", title: run.name }, run.name),
        h("span", { class: "meta" }, meta),
        renameBtn,
        deleteBtn,
      ),
    );
  });

  host.append(h("h2", {}, "Files"), form, list);
}
