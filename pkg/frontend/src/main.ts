import { init } from "./app";

const root = document.getElementById("app");
if (root) {
    init(root, "");
}
