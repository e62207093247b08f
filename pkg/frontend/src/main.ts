import { AnalyzeClient } from "./api";
import { renderShell, wireApp } from "./app";

const root = document.getElementById("app");
if (root) {
  renderShell(root);
  wireApp(root, new AnalyzeClient(""));
}
