import { Api } from "./api.js";
import { startCapture } from "./audio.js";
import { App } from "./controller.js";
import { grabElements, render } from "./ui.js";

const api = new Api();
const app = new App(api, startCapture);
const elements = grabElements(document);

app.subscribe((state) => render(state, elements, api));

elements.languageSelect.addEventListener("change", () => {
  app.selectLanguage(elements.languageSelect.value);
});
elements.topicButton.addEventListener("click", () => {
  void app.fetchTopic();
});
elements.recordButton.addEventListener("click", () => {
  void app.toggleRecord();
});

void app.init();
