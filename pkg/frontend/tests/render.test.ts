/** Pure rendering: badges, banners, folders, spread, notifications. */
import { describe, expect, it } from "vitest";

import { badges, degradedBanner, libraryView, notificationRow, resultListItem, spreadPanel } from "../src/render";

const summary = {
  item: "it-1",
  comment_count: 2,
  rating_count: 1,
  avg_rating: 4,
  library_count: 3,
  forward_count: 5,
  folders: [["men", 3]] as Array<[string, number]>,
};

describe("badges", () => {
  it("shows one badge per social signal", () => {
    const node = badges(summary);
    expect(node.querySelector(".badge-comments")?.textContent).toBe("comments 2");
    expect(node.querySelector(".badge-ratings")?.textContent).toBe("ratings 1");
    expect(node.querySelector(".badge-forwards")?.textContent).toBe("forwards 5");
    expect(node.querySelector(".badge-library")?.textContent).toBe("library 3");
    expect(node.querySelector(".badge-avg")?.textContent).toBe("avg 4.0");
  });

  it("omits the average badge when unrated", () => {
    const node = badges({ ...summary, rating_count: 0, avg_rating: undefined });
    expect(node.querySelector(".badge-avg")).toBeNull();
  });
});

describe("resultListItem", () => {
  const result = {
    item: "it-1",
    source: "mock-dl-a",
    base_rank: 1,
    final_score: 1.5,
    record: {
      identifier: "r1",
      title: "Violence and gender",
      creators: ["Keller, M."],
      subjects: ["Gewalt"],
    },
    summary,
    in_library: true,
  };

  it("renders title, creators, source, score, and badges", () => {
    const li = resultListItem(result);
    expect(li.querySelector(".result-title")?.textContent).toContain("Violence and gender");
    expect(li.querySelector(".creators")?.textContent).toBe("Keller, M.");
    expect(li.querySelector(".source")?.textContent).toContain("mock-dl-a");
    expect(li.querySelector(".score")?.textContent).toContain("1.500");
    expect(li.querySelectorAll(".badge").length).toBeGreaterThanOrEqual(4);
  });

  it("marks items already in the library", () => {
    expect(resultListItem(result).querySelector(".in-library")).not.toBeNull();
    expect(
      resultListItem({ ...result, in_library: false }).querySelector(".in-library"),
    ).toBeNull();
  });
});

describe("degradedBanner", () => {
  it("is absent when every source answered", () => {
    expect(degradedBanner([])).toBeNull();
  });

  it("names the failing sources", () => {
    const banner = degradedBanner([
      { source: "mock-dl-b", returned: 0, dropped_invalid: 0, error: "timeout" },
    ]);
    expect(banner?.textContent).toContain("mock-dl-b (timeout)");
    expect(banner?.getAttribute("role")).toBe("alert");
  });
});

describe("libraryView", () => {
  it("groups items under folder headings", () => {
    const node = libraryView({
      user: "alice",
      folders: [
        {
          folder: "men",
          items: [
            {
              item_id: "it-1",
              dl_source: "mock-dl-a",
              record: { identifier: "r1", title: "Violence and gender", creators: [], subjects: [] },
            },
          ],
        },
      ],
    });
    const section = node.querySelector("section.folder") as HTMLElement;
    expect(section.dataset.folder).toBe("men");
    expect(section.querySelector(".folder-item")?.textContent).toBe("Violence and gender");
  });

  it("explains an empty library", () => {
    const node = libraryView({ user: "alice", folders: [] });
    expect(node.textContent).toContain("No folders yet");
  });
});

describe("spreadPanel", () => {
  it("shows reach and depth as returned by the API", () => {
    const node = spreadPanel({ item: "it-1", roots: ["a"], edges: [["a", "b"]], reach: 4, max_depth: 3 });
    expect(node.querySelector(".spread-reach")?.textContent).toBe("reach 4");
    expect(node.querySelector(".spread-depth")?.textContent).toBe("max depth 3");
  });
});

describe("notificationRow", () => {
  it("labels alert matches and network posts differently", () => {
    const base = {
      notification_id: "nt-1",
      recipient: "alice",
      item: "it-1",
      created_at: "2020-01-01T00:00:00Z",
    };
    const alert = notificationRow({ ...base, reason: "alert_match" as const });
    const share = notificationRow({ ...base, reason: "network_post" as const, message: "fyi" });
    expect(alert.textContent).toContain("[alert]");
    expect(share.textContent).toContain("[shared with you]");
    expect(share.textContent).toContain("fyi");
  });
});
