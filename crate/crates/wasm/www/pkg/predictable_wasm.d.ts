/* tslint:disable */
/* eslint-disable */

/**
 * Observes `x <> (x <> ...)` or `(... <> x) <> x` for `x = Just 1` in
 * `DFirst` or `DLast`.
 */
export function chain(monoid: string, nesting: string, fuel: bigint): string;

export function demos(): string;

/**
 * Runs a demo; the JSON carries the text rendering and exit code as well.
 */
export function run_demo(name: string, depth: number, fuel: bigint, env: bigint, s0: bigint): string;

/**
 * One suite group as a JSON array of items.
 */
export function suite(group: string, seed: bigint): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly chain: (a: number, b: number, c: number, d: number, e: bigint) => [number, number];
    readonly demos: () => [number, number];
    readonly run_demo: (a: number, b: number, c: number, d: bigint, e: bigint, f: bigint) => [number, number];
    readonly suite: (a: number, b: number, c: bigint) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
