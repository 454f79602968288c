/**
 * Zod schemas mirroring the gateway's published API models.
 *
 * The API client parses every response through these, so a contract drift
 * between gateway and UI fails loudly instead of rendering garbage. The
 * tests reuse them to validate the requests the UI issues.
 */
import { z } from "zod";

export const RecordSchema = z
  .object({
    identifier: z.string().min(1),
    title: z.string().min(1),
    creators: z.array(z.string()).default([]),
    date: z.string().optional(),
    subjects: z.array(z.string()).default([]),
    description: z.string().optional(),
    doc_type: z.string().optional(),
    language: z.string().optional(),
    link: z.string().optional(),
  })
  .strict();

export const SummarySchema = z
  .object({
    item: z.string(),
    comment_count: z.number().int().nonnegative(),
    rating_count: z.number().int().nonnegative(),
    avg_rating: z.number().min(1).max(5).optional(),
    library_count: z.number().int().nonnegative(),
    forward_count: z.number().int().nonnegative(),
    folders: z.array(z.tuple([z.string(), z.number().int()])),
  })
  .strict();

export const SourceStatusSchema = z
  .object({
    source: z.string(),
    total: z.number().int().optional(),
    returned: z.number().int().default(0),
    dropped_invalid: z.number().int().default(0),
    error: z.string().optional(),
  })
  .strict();

export const SearchResultSchema = z
  .object({
    item: z.string(),
    source: z.string(),
    base_rank: z.number().int().positive(),
    final_score: z.number(),
    record: RecordSchema,
    summary: SummarySchema,
    in_library: z.boolean().optional(),
  })
  .strict();

export const SearchResponseSchema = z
  .object({
    query: z.string(),
    offset: z.number().int(),
    limit: z.number().int(),
    results: z.array(SearchResultSchema),
    source_status: z.array(SourceStatusSchema),
    source_errors: z.array(SourceStatusSchema),
  })
  .strict();

export const AnnotationSchema = z
  .object({
    annotation_id: z.string(),
    kind: z.enum(["comment", "rating", "library_entry", "forward"]),
    author: z.string(),
    item: z.string(),
    created_at: z.string(),
    payload: z.record(z.unknown()),
  })
  .strict();

export const UserSchema = z
  .object({
    user_id: z.string(),
    display_name: z.string(),
    sns_origin: z.string(),
    interests: z.array(z.string()),
    contacts: z.array(z.string()),
  })
  .strict();

export const ItemSchema = z
  .object({
    item_id: z.string(),
    dl_source: z.string(),
    record: RecordSchema,
  })
  .strict();

export const ItemDetailSchema = z
  .object({ item: ItemSchema, summary: SummarySchema })
  .strict();

export const SpreadSchema = z
  .object({
    item: z.string(),
    roots: z.array(z.string()),
    edges: z.array(z.tuple([z.string(), z.string()])),
    reach: z.number().int().nonnegative(),
    max_depth: z.number().int().nonnegative(),
  })
  .strict();

export const AlertSchema = z
  .object({
    alert_id: z.string(),
    user: z.string(),
    terms: z.array(z.string()),
    recommended_terms: z.array(z.string()),
    last_run_seq: z.number().int(),
  })
  .strict();

export const NotificationSchema = z
  .object({
    notification_id: z.string(),
    recipient: z.string(),
    item: z.string(),
    reason: z.enum(["alert_match", "network_post"]),
    message: z.string().optional(),
    created_at: z.string(),
  })
  .strict();

export const NotificationsSchema = z
  .object({ notifications: z.array(NotificationSchema) })
  .strict();

export const FolderSchema = z
  .object({ folder: z.string(), items: z.array(ItemSchema) })
  .strict();

export const LibrarySchema = z
  .object({ user: z.string(), folders: z.array(FolderSchema) })
  .strict();

// Request bodies the UI is allowed to send (used by the contract tests).
export const CommentRequestSchema = z
  .object({ user: z.string().min(1), text: z.string().min(1) })
  .strict();
export const RatingRequestSchema = z
  .object({ user: z.string().min(1), value: z.number().int().min(1).max(5) })
  .strict();
export const LibraryRequestSchema = z
  .object({ user: z.string().min(1), folder: z.string().min(1) })
  .strict();
export const ForwardRequestSchema = z
  .object({ user: z.string().min(1), to: z.string().min(1), parent: z.string().nullable().optional() })
  .strict();
export const AlertRequestSchema = z
  .object({ user: z.string().min(1), extra_terms: z.array(z.string()) })
  .strict();

export type SearchResponse = z.infer<typeof SearchResponseSchema>;
export type SearchResult = z.infer<typeof SearchResultSchema>;
export type Summary = z.infer<typeof SummarySchema>;
export type Annotation = z.infer<typeof AnnotationSchema>;
export type User = z.infer<typeof UserSchema>;
export type Item = z.infer<typeof ItemSchema>;
export type ItemDetail = z.infer<typeof ItemDetailSchema>;
export type Spread = z.infer<typeof SpreadSchema>;
export type Alert = z.infer<typeof AlertSchema>;
export type Notification = z.infer<typeof NotificationSchema>;
export type Library = z.infer<typeof LibrarySchema>;
export type SourceStatus = z.infer<typeof SourceStatusSchema>;
