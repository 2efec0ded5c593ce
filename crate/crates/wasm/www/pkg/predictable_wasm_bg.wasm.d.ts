/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const chain: (a: number, b: number, c: number, d: number, e: bigint) => [number, number];
export const demos: () => [number, number];
export const run_demo: (a: number, b: number, c: number, d: bigint, e: bigint, f: bigint) => [number, number];
export const suite: (a: number, b: number, c: bigint) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
