/**
 * Single-page client of the gateway: search socially-enriched results, tag
 * them into folders, comment/rate/share, inspect spread, manage alerts.
 * All state lives on the server; every mutation refetches the view.
 */
import { GatewayClient, ApiError } from "./api";
import {
  alertCard,
  badges,
  degradedBanner,
  libraryView,
  notificationRow,
  resultListItem,
  spreadPanel,
} from "./render";
import { SearchResult } from "./schemas";

export function createApp(root: HTMLElement, client: GatewayClient): { refresh(): Promise<void> } {
  root.innerHTML = `
    <header>
      <h1>ScholarLib</h1>
      <label class="who">acting as
        <select id="user-switcher"></select>
      </label>
      <nav>
        <button data-tab="search" class="active">Search</button>
        <button data-tab="library">Library</button>
        <button data-tab="alerts">Alerts</button>
      </nav>
    </header>
    <main>
      <section id="tab-search" class="tab active">
        <form id="search-form">
          <input id="search-input" placeholder="Search the connected libraries" />
          <button type="submit">Search</button>
          <span id="search-error" class="inline-error" hidden></span>
        </form>
        <div id="search-banner"></div>
        <ul id="search-results"></ul>
      </section>
      <section id="tab-library" class="tab" hidden>
        <div id="library-root"></div>
      </section>
      <section id="tab-alerts" class="tab" hidden>
        <form id="alert-form">
          <input id="alert-terms" placeholder="extra terms, comma separated" />
          <button id="alert-submit" type="submit">Create alert from my interests</button>
        </form>
        <div id="alert-list"></div>
        <button id="run-alerts">Check for new items</button>
        <ul id="notification-list"></ul>
      </section>
    </main>
  `;

  const query = (selector: string) => root.querySelector(selector) as HTMLElement;
  const searchInput = query("#search-input") as HTMLInputElement;
  const searchError = query("#search-error");
  const resultsList = query("#search-results") as HTMLUListElement;
  const banner = query("#search-banner");

  let lastQuery = "";

  function showError(error: unknown): void {
    const message = error instanceof ApiError ? `${error.code}: ${error.message}` : String(error);
    banner.innerHTML = "";
    const node = document.createElement("div");
    node.className = "banner error";
    node.textContent = message;
    banner.appendChild(node);
  }

  // -- search view -----------------------------------------------------------

  async function runSearch(text: string): Promise<void> {
    searchError.hidden = true;
    if (!text.trim()) {
      // Inline validation: a blank query never reaches the gateway.
      searchError.textContent = "enter a search term";
      searchError.hidden = false;
      return;
    }
    lastQuery = text;
    const response = await client.search(text);
    banner.innerHTML = "";
    const degraded = degradedBanner(response.source_errors);
    if (degraded) banner.appendChild(degraded);
    resultsList.innerHTML = "";
    for (const result of response.results) {
      const li = resultListItem(result);
      li.appendChild(detailToggle(result));
      resultsList.appendChild(li);
    }
    if (response.results.length === 0) {
      const li = document.createElement("li");
      li.className = "empty";
      li.textContent = "no results";
      resultsList.appendChild(li);
    }
  }

  function detailToggle(result: SearchResult): HTMLElement {
    const button = document.createElement("button");
    button.className = "toggle-detail";
    button.textContent = "annotate / share";
    button.addEventListener("click", async () => {
      const li = button.closest("li") as HTMLLIElement;
      const existing = li.querySelector(".detail");
      if (existing) {
        existing.remove();
        return;
      }
      li.appendChild(await detailControls(result.item));
    });
    return button;
  }

  async function detailControls(itemId: string): Promise<HTMLElement> {
    const detail = document.createElement("div");
    detail.className = "detail";

    // Folder tagging.
    const tagForm = document.createElement("form");
    tagForm.className = "tag-form";
    tagForm.innerHTML = `
      <input name="folder" placeholder="folder (e.g. men)" />
      <button type="submit">Add to library</button>
    `;
    tagForm.addEventListener("submit", async (event) => {
      event.preventDefault();
      const folder = (tagForm.elements.namedItem("folder") as HTMLInputElement).value;
      if (!folder.trim()) return;
      try {
        await client.tagIntoFolder(itemId, folder.trim());
        await runSearch(lastQuery);
      } catch (error) {
        showError(error);
      }
    });
    detail.appendChild(tagForm);

    // Comment box.
    const commentForm = document.createElement("form");
    commentForm.className = "comment-form";
    commentForm.innerHTML = `
      <input name="text" placeholder="write a comment" />
      <button type="submit">Comment</button>
    `;
    commentForm.addEventListener("submit", async (event) => {
      event.preventDefault();
      const text = (commentForm.elements.namedItem("text") as HTMLInputElement).value;
      if (!text.trim()) return;
      try {
        await client.addComment(itemId, text);
        await runSearch(lastQuery);
      } catch (error) {
        showError(error);
      }
    });
    detail.appendChild(commentForm);

    // 1-5 rating.
    const ratingRow = document.createElement("div");
    ratingRow.className = "rating-row";
    for (let value = 1; value <= 5; value += 1) {
      const star = document.createElement("button");
      star.className = "rate";
      star.dataset.value = String(value);
      star.textContent = `${value}★`;
      star.addEventListener("click", async () => {
        try {
          await client.addRating(itemId, value);
          await runSearch(lastQuery);
        } catch (error) {
          showError(error);
        }
      });
      ratingRow.appendChild(star);
    }
    detail.appendChild(ratingRow);

    // Share picker: contacts only, by construction.
    const profile = await client.userProfile(client.currentUser);
    const shareRow = document.createElement("div");
    shareRow.className = "share-row";
    const picker = document.createElement("select");
    picker.className = "share-picker";
    for (const contact of profile.contacts) {
      const option = document.createElement("option");
      option.value = contact;
      option.textContent = contact;
      picker.appendChild(option);
    }
    const shareButton = document.createElement("button");
    shareButton.className = "share";
    shareButton.textContent = "Share";
    shareButton.disabled = profile.contacts.length === 0;
    shareButton.addEventListener("click", async () => {
      try {
        await client.forwardTo(itemId, picker.value);
        await refreshSpread();
        await runSearch(lastQuery);
      } catch (error) {
        showError(error);
      }
    });
    shareRow.appendChild(picker);
    shareRow.appendChild(shareButton);
    detail.appendChild(shareRow);

    // Spread panel.
    const spreadHolder = document.createElement("div");
    spreadHolder.className = "spread-holder";
    detail.appendChild(spreadHolder);
    async function refreshSpread(): Promise<void> {
      const spread = await client.spread(itemId);
      spreadHolder.innerHTML = "";
      spreadHolder.appendChild(spreadPanel(spread));
    }
    await refreshSpread();

    return detail;
  }

  query("#search-form").addEventListener("submit", (event) => {
    event.preventDefault();
    runSearch(searchInput.value).catch(showError);
  });

  // -- library view ------------------------------------------------------------

  async function renderLibrary(): Promise<void> {
    const libraryRoot = query("#library-root");
    const library = await client.library(client.currentUser);
    libraryRoot.innerHTML = "";
    libraryRoot.appendChild(libraryView(library));
  }

  // -- alerts view --------------------------------------------------------------

  async function renderAlerts(): Promise<void> {
    const listHolder = query("#alert-list");
    const noteList = query("#notification-list") as HTMLUListElement;
    const submit = query("#alert-submit") as HTMLButtonElement;
    const [alerts, profile, notes] = await Promise.all([
      client.alerts(client.currentUser),
      client.userProfile(client.currentUser),
      client.notifications(client.currentUser),
    ]);
    const extra = (query("#alert-terms") as HTMLInputElement).value;
    submit.disabled = profile.interests.length === 0 && !extra.trim();
    listHolder.innerHTML = "";
    for (const alert of alerts) {
      listHolder.appendChild(alertCard(alert));
    }
    noteList.innerHTML = "";
    for (const note of notes) {
      noteList.appendChild(notificationRow(note));
    }
  }

  query("#alert-form").addEventListener("submit", async (event) => {
    event.preventDefault();
    const termsInput = query("#alert-terms") as HTMLInputElement;
    const extraTerms = termsInput.value
      .split(",")
      .map((term) => term.trim())
      .filter(Boolean);
    try {
      await client.createAlert(extraTerms);
      termsInput.value = "";
      await renderAlerts();
    } catch (error) {
      showError(error);
    }
  });

  (query("#alert-terms") as HTMLInputElement).addEventListener("input", () => {
    renderAlerts().catch(showError);
  });

  query("#run-alerts").addEventListener("click", async () => {
    try {
      await client.runAlerts();
      await renderAlerts();
    } catch (error) {
      showError(error);
    }
  });

  // -- user switcher and tabs ------------------------------------------------------

  async function populateUsers(): Promise<void> {
    const switcher = query("#user-switcher") as HTMLSelectElement;
    const users = await client.users();
    switcher.innerHTML = "";
    for (const user of users) {
      const option = document.createElement("option");
      option.value = user.user_id;
      option.textContent = `${user.display_name} (${user.user_id})`;
      switcher.appendChild(option);
    }
    if (users.length > 0) {
      client.setUser(switcher.value);
    }
    switcher.addEventListener("change", async () => {
      client.setUser(switcher.value);
      await Promise.all([renderLibrary(), renderAlerts()]);
      if (lastQuery) await runSearch(lastQuery);
    });
  }

  for (const button of root.querySelectorAll("nav button")) {
    button.addEventListener("click", async () => {
      for (const other of root.querySelectorAll("nav button")) other.classList.remove("active");
      button.classList.add("active");
      const tab = (button as HTMLElement).dataset.tab;
      for (const section of root.querySelectorAll(".tab")) {
        const active = section.id === `tab-${tab}`;
        (section as HTMLElement).hidden = !active;
        section.classList.toggle("active", active);
      }
      if (tab === "library") await renderLibrary().catch(showError);
      if (tab === "alerts") await renderAlerts().catch(showError);
    });
  }

  return {
    async refresh() {
      await populateUsers();
      await Promise.all([renderLibrary(), renderAlerts()]);
    },
  };
}

declare global {
  interface Window {
    scholarlibBooted?: boolean;
  }
}

if (typeof document !== "undefined" && document.getElementById("app") && !window.scholarlibBooted) {
  window.scholarlibBooted = true;
  const client = new GatewayClient("");
  const app = createApp(document.getElementById("app") as HTMLElement, client);
  app.refresh().catch((error) => console.error("bootstrap failed", error));
}

export { GatewayClient, badges };
