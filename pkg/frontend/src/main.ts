// Browser entry point. The service address can be overridden with
// ?api=http://host:port when the game server runs somewhere else.

import { ServiceClient } from "./api.js";
import { createApp } from "./app.js";

const params = new URLSearchParams(window.location.search);
const base = params.get("api") ?? "http://127.0.0.1:8000";
const root = document.getElementById("app");
if (root === null) throw new Error("missing #app container");
createApp(root, new ServiceClient(base));
