/**
 * Typed gateway client. Every response is validated against the published
 * schema before anything touches the DOM; the acting user travels in the
 * X-ScholarLib-User header.
 */
import { z } from "zod";

import {
  Alert,
  AlertSchema,
  Annotation,
  AnnotationSchema,
  ItemDetail,
  ItemDetailSchema,
  Library,
  LibrarySchema,
  NotificationsSchema,
  Notification,
  SearchResponse,
  SearchResponseSchema,
  Spread,
  SpreadSchema,
  User,
  UserSchema,
} from "./schemas";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    detail: string,
  ) {
    super(detail || code);
  }
}

export class GatewayClient {
  constructor(
    private readonly baseUrl: string = "",
    private user: string = "",
  ) {}

  setUser(user: string): void {
    this.user = user;
  }

  get currentUser(): string {
    return this.user;
  }

  private async call<T>(
    schema: { parse(data: unknown): T },
    method: string,
    path: string,
    body?: unknown,
  ): Promise<T> {
    const headers: Record<string, string> = {};
    if (this.user) headers["X-ScholarLib-User"] = this.user;
    if (body !== undefined) headers["Content-Type"] = "application/json";
    const response = await fetch(this.baseUrl + path, {
      method,
      headers,
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const payload = await response.json();
    if (!response.ok) {
      throw new ApiError(response.status, payload.error ?? "error", payload.detail ?? "");
    }
    return schema.parse(payload);
  }

  search(query: string, opts: { limit?: number; user?: string } = {}): Promise<SearchResponse> {
    const params = new URLSearchParams({ q: query });
    if (opts.limit) params.set("limit", String(opts.limit));
    const user = opts.user ?? this.user;
    if (user) params.set("user", user);
    return this.call(SearchResponseSchema, "GET", `/search?${params}`);
  }

  itemDetail(itemId: string): Promise<ItemDetail> {
    return this.call(ItemDetailSchema, "GET", `/items/${encodeURIComponent(itemId)}`);
  }

  itemAnnotations(itemId: string): Promise<Annotation[]> {
    return this.call(
      z.array(AnnotationSchema),
      "GET",
      `/items/${encodeURIComponent(itemId)}/annotations`,
    );
  }

  addComment(itemId: string, text: string): Promise<Annotation> {
    return this.call(AnnotationSchema, "POST", `/items/${encodeURIComponent(itemId)}/comments`, {
      user: this.user,
      text,
    });
  }

  addRating(itemId: string, value: number): Promise<Annotation> {
    return this.call(AnnotationSchema, "POST", `/items/${encodeURIComponent(itemId)}/ratings`, {
      user: this.user,
      value,
    });
  }

  tagIntoFolder(itemId: string, folder: string): Promise<Annotation> {
    return this.call(AnnotationSchema, "POST", `/items/${encodeURIComponent(itemId)}/library`, {
      user: this.user,
      folder,
    });
  }

  forwardTo(itemId: string, to: string): Promise<Annotation> {
    return this.call(AnnotationSchema, "POST", `/items/${encodeURIComponent(itemId)}/forwards`, {
      user: this.user,
      to,
    });
  }

  spread(itemId: string): Promise<Spread> {
    return this.call(SpreadSchema, "GET", `/items/${encodeURIComponent(itemId)}/spread`);
  }

  users(): Promise<User[]> {
    return this.call(z.array(UserSchema), "GET", "/users");
  }

  userProfile(userId: string): Promise<User> {
    return this.call(UserSchema, "GET", `/users/${encodeURIComponent(userId)}`);
  }

  library(userId: string): Promise<Library> {
    return this.call(LibrarySchema, "GET", `/users/${encodeURIComponent(userId)}/library`);
  }

  notifications(userId: string): Promise<Notification[]> {
    return this.call(
      NotificationsSchema,
      "GET",
      `/users/${encodeURIComponent(userId)}/notifications`,
    ).then((body) => body.notifications);
  }

  alerts(userId: string): Promise<Alert[]> {
    return this.call(
      z.array(AlertSchema),
      "GET",
      `/alerts?user=${encodeURIComponent(userId)}`,
    );
  }

  createAlert(extraTerms: string[]): Promise<Alert> {
    return this.call(AlertSchema, "POST", "/alerts", {
      user: this.user,
      extra_terms: extraTerms,
    });
  }

  runAlerts(): Promise<Notification[]> {
    return this.call(NotificationsSchema, "POST", "/alerts/run").then(
      (body) => body.notifications,
    );
  }
}
