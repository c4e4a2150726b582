import { ApiClient } from "./api.js";
import { Dashboard } from "./dashboard.js";
import { VotingPanel } from "./panel.js";

const api = new ApiClient("");

const panelRoot = document.getElementById("voting-panel");
if (panelRoot) void new VotingPanel(panelRoot, api).load();

const dashRoot = document.getElementById("dashboard");
if (dashRoot) void new Dashboard(dashRoot, api).load();
