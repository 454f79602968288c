/**
 * Scripted end-to-end pass through the app in jsdom: search, tag a hit
 * into the "men" folder, watch the badge and library update, then the
 * degraded-sources banner and the alert view. The gateway double rejects
 * any request outside the documented API, so this doubles as the
 * only-documented-calls contract test.
 */
import { afterEach, beforeEach, describe, expect, it } from "vitest";

import { GatewayClient } from "../src/api";
import { createApp } from "../src/main";
import { FakeGateway } from "./fake_gateway";

let gateway: FakeGateway;
let uninstall: () => void;
let root: HTMLElement;
let app: { refresh(): Promise<void> };
let client: GatewayClient;

function flush(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}

async function submitSearch(text: string): Promise<void> {
  const input = root.querySelector("#search-input") as HTMLInputElement;
  input.value = text;
  (root.querySelector("#search-form") as HTMLFormElement).dispatchEvent(
    new Event("submit", { bubbles: true, cancelable: true }),
  );
  await flush();
  await flush();
}

beforeEach(async () => {
  gateway = new FakeGateway();
  gateway.addUser("u5", ["violence research"], ["u1"]);
  gateway.addUser("u1", [], ["u5"]);
  gateway.addItem("it-v1", "The politics of violence and gender", ["Gewalt", "Geschlecht"]);
  gateway.addItem("it-v2", "Violence among adolescents", ["Gewalt", "Jugend"]);
  gateway.addItem("it-m1", "Media habits", ["Medien"]);
  uninstall = gateway.install();

  document.body.innerHTML = '<div id="app"></div>';
  root = document.getElementById("app") as HTMLElement;
  client = new GatewayClient("");
  app = createApp(root, client);
  await app.refresh();
  await flush();
});

afterEach(() => uninstall());

describe("search -> tag -> badge scenario", () => {
  it("completes the folder-tagging loop without a page reload", async () => {
    await submitSearch("violence");
    const results = root.querySelectorAll("#search-results li.result");
    expect(results.length).toBe(2);
    const first = results[0] as HTMLLIElement;
    expect(first.querySelector(".result-title")?.textContent).toContain("politics of violence");
    expect(first.querySelector(".badge-library")?.textContent).toBe("library 0");

    // Open the annotate/share controls and tag into folder "men".
    (first.querySelector(".toggle-detail") as HTMLButtonElement).click();
    await flush();
    await flush();
    const tagForm = first.querySelector(".tag-form") as HTMLFormElement;
    (tagForm.elements.namedItem("folder") as HTMLInputElement).value = "men";
    tagForm.dispatchEvent(new Event("submit", { bubbles: true, cancelable: true }));
    await flush();
    await flush();

    // The refetched result list shows the badge and the in-library flag.
    const refreshed = root.querySelector('#search-results li[data-item="it-v1"]') as HTMLElement;
    expect(refreshed.querySelector(".badge-library")?.textContent).toBe("library 1");
    expect(refreshed.querySelector(".in-library")).not.toBeNull();

    // The library tab now shows the folder with the tagged item.
    (root.querySelector('nav button[data-tab="library"]') as HTMLButtonElement).click();
    await flush();
    await flush();
    const folder = root.querySelector('#library-root section[data-folder="men"]') as HTMLElement;
    expect(folder).not.toBeNull();
    expect(folder.textContent).toContain("politics of violence");

    // Tagging the same item into the same folder again stays a single entry.
    expect(
      gateway.annotations.filter(
        (a) => a.kind === "library_entry" && a.item === "it-v1" && a.payload.folder === "men",
      ).length,
    ).toBe(1);
  });

  it("blank queries are validated inline and never reach the gateway", async () => {
    const before = gateway.requests.filter((r) => r.path === "/search").length;
    await submitSearch("   ");
    const error = root.querySelector("#search-error") as HTMLElement;
    expect(error.hidden).toBe(false);
    expect(gateway.requests.filter((r) => r.path === "/search").length).toBe(before);
  });

  it("shows the degraded-sources banner when a library fails", async () => {
    gateway.sourceErrors = [
      { source: "mock-dl-b", returned: 0, dropped_invalid: 0, error: "timeout" },
    ];
    await submitSearch("violence");
    const banner = root.querySelector("#search-banner .banner.degraded");
    expect(banner?.textContent).toContain("mock-dl-b (timeout)");
  });

  it("rates and shares through the documented endpoints, updating spread", async () => {
    await submitSearch("violence");
    const first = root.querySelector('#search-results li[data-item="it-v1"]') as HTMLElement;
    (first.querySelector(".toggle-detail") as HTMLButtonElement).click();
    await flush();
    await flush();

    (first.querySelector('button.rate[data-value="4"]') as HTMLButtonElement).click();
    await flush();
    await flush();
    const rated = root.querySelector('#search-results li[data-item="it-v1"]') as HTMLElement;
    expect(rated.querySelector(".badge-avg")?.textContent).toBe("avg 4.0");

    (rated.querySelector(".toggle-detail") as HTMLButtonElement).click();
    await flush();
    await flush();
    const picker = rated.querySelector(".share-picker") as HTMLSelectElement;
    expect([...picker.options].map((o) => o.value)).toEqual(["u1"]);
    (rated.querySelector("button.share") as HTMLButtonElement).click();
    await flush();
    await flush();
    const shared = root.querySelector('#search-results li[data-item="it-v1"]') as HTMLElement;
    expect(shared.querySelector(".badge-forwards")?.textContent).toBe("forwards 1");
  });
});

describe("alerts view", () => {
  it("creates an alert with recommendation chips and lists notifications", async () => {
    (root.querySelector('nav button[data-tab="alerts"]') as HTMLButtonElement).click();
    await flush();
    await flush();
    (root.querySelector("#alert-form") as HTMLFormElement).dispatchEvent(
      new Event("submit", { bubbles: true, cancelable: true }),
    );
    await flush();
    await flush();
    const card = root.querySelector(".alert-card") as HTMLElement;
    expect(card.textContent).toContain("violence research");
    expect(card.querySelector(".chip")?.textContent).toBe("Gewalt");

    (root.querySelector("#run-alerts") as HTMLButtonElement).click();
    await flush();
    await flush();
    const rows = root.querySelectorAll("#notification-list li.notification");
    expect(rows.length).toBeGreaterThan(0);
    expect(rows[0].textContent).toContain("[alert]");
  });
});

describe("documented-calls contract", () => {
  it("issued only documented gateway calls during the whole scenario", async () => {
    await submitSearch("violence");
    const allowed = [
      /^\/search$/,
      /^\/users$/,
      /^\/users\/[^/]+$/,
      /^\/users\/[^/]+\/library$/,
      /^\/users\/[^/]+\/notifications$/,
      /^\/items\/[^/]+$/,
      /^\/items\/[^/]+\/(annotations|comments|ratings|library|forwards|spread)$/,
      /^\/alerts$/,
      /^\/alerts\/run$/,
    ];
    for (const request of gateway.requests) {
      expect(
        allowed.some((pattern) => pattern.test(request.path)),
        `undocumented call: ${request.method} ${request.path}`,
      ).toBe(true);
    }
  });
});
