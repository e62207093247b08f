import { AnalyzeClient, isAbortError, ServiceError } from "./api";
import { debounce } from "./debounce";
import type { AnalyzeResponse } from "./types";

export const SLIDER_DEBOUNCE_MS = 150;

const LANGUAGES = ["en", "de", "es", "fr", "pt", "ja"];

/** Builds the static page structure inside `root` (also used by tests). */
export function renderShell(root: HTMLElement): void {
  root.innerHTML = `
    <h1>muted</h1>
    <p class="tagline">Offensive spans and their targets from classifier attention.</p>
    <div id="banner" hidden>
      <span id="banner-text"></span>
      <button id="banner-dismiss" type="button">dismiss</button>
    </div>
    <form id="controls">
      <textarea id="text" rows="3" placeholder="Enter a sentence to analyze"></textarea>
      <div class="row">
        <label>Language
          <select id="language">${LANGUAGES.map((l) => `<option>${l}</option>`).join("")}</select>
        </label>
        <label>Span threshold
          <input id="threshold" type="range" min="0" max="1" step="0.01" value="0.6">
          <output id="threshold-value">0.60</output>
        </label>
        <label>Mode
          <select id="mode">
            <option value="relative" selected>relative</option>
            <option value="absolute">absolute</option>
          </select>
        </label>
        <button id="analyze-btn" type="submit">Show prediction heatmap</button>
      </div>
    </form>
    <div id="result" hidden>
      <p id="classifier"></p>
      <h2>Heatmap</h2>
      <div id="heatmap"></div>
      <h2>Roles</h2>
      <div id="roles"></div>
      <h2>Predicted spans</h2>
      <ul id="spans"></ul>
      <p id="elapsed"></p>
    </div>
  `;
}

interface Elements {
  text: HTMLTextAreaElement;
  language: HTMLSelectElement;
  threshold: HTMLInputElement;
  thresholdValue: HTMLOutputElement;
  mode: HTMLSelectElement;
  button: HTMLButtonElement;
  form: HTMLFormElement;
  banner: HTMLElement;
  bannerText: HTMLElement;
  bannerDismiss: HTMLButtonElement;
  result: HTMLElement;
  classifier: HTMLElement;
  heatmap: HTMLElement;
  roles: HTMLElement;
  spans: HTMLUListElement;
  elapsed: HTMLElement;
}

function grab(root: ParentNode): Elements {
  const byId = <T extends HTMLElement>(id: string) => root.querySelector(`#${id}`) as T;
  return {
    text: byId("text"),
    language: byId("language"),
    threshold: byId("threshold"),
    thresholdValue: byId("threshold-value"),
    mode: byId("mode"),
    button: byId("analyze-btn"),
    form: byId("controls"),
    banner: byId("banner"),
    bannerText: byId("banner-text"),
    bannerDismiss: byId("banner-dismiss"),
    result: byId("result"),
    classifier: byId("classifier"),
    heatmap: byId("heatmap"),
    roles: byId("roles"),
    spans: byId("spans"),
    elapsed: byId("elapsed"),
  };
}

/**
 * Wires the page to the service. Fragments coming back from /analyze are
 * injected as-is (the server escapes user text); everything else is
 * rendered through textContent so the client never interprets payload
 * values as markup.
 */
export function wireApp(root: HTMLElement, client: AnalyzeClient): void {
  const el = grab(root);

  const showError = (message: string) => {
    el.bannerText.textContent = message;
    el.banner.hidden = false;
  };
  el.bannerDismiss.addEventListener("click", () => {
    el.banner.hidden = true;
  });

  const render = (resp: AnalyzeResponse) => {
    el.result.hidden = false;
    el.classifier.textContent =
      `classifier: ${resp.classifier.label} (score ${resp.classifier.score.toFixed(4)})`;
    el.heatmap.innerHTML = resp.heatmap_html;
    el.roles.innerHTML = resp.roles_html;
    el.spans.replaceChildren(
      ...resp.char_spans.map(([s, e]) => {
        const li = document.createElement("li");
        li.textContent = `[${s}, ${e})`;
        return li;
      }),
    );
    const t = resp.elapsed;
    el.elapsed.textContent =
      `elapsed (s): span prediction ${t.span_prediction.toFixed(4)}, ` +
      `attention map ${t.attention_map.toFixed(4)}, ` +
      `role visuals ${t.role_visuals.toFixed(4)}, total ${t.total.toFixed(4)}`;
  };

  const analyze = async () => {
    const text = el.text.value;
    if (!text.trim()) return;
    el.banner.hidden = true;
    el.button.disabled = true;
    try {
      const resp = await client.analyze({
        text,
        language: el.language.value,
        threshold: Number(el.threshold.value),
        mode: el.mode.value as "relative" | "absolute",
      });
      render(resp);
    } catch (err) {
      if (isAbortError(err)) return; // superseded by a newer request
      if (err instanceof ServiceError) {
        showError(`service error ${err.status}: ${err.message}`);
      } else {
        showError(`service unreachable: ${String(err)}`);
      }
    } finally {
      el.button.disabled = false;
    }
  };

  el.form.addEventListener("submit", (ev) => {
    ev.preventDefault();
    void analyze();
  });

  const debouncedAnalyze = debounce(() => void analyze(), SLIDER_DEBOUNCE_MS);
  el.threshold.addEventListener("input", () => {
    el.thresholdValue.textContent = Number(el.threshold.value).toFixed(2);
    debouncedAnalyze();
  });
  el.mode.addEventListener("change", () => void analyze());
}
