/* tslint:disable */
/* eslint-disable */

/**
 * Case, `N_r`, orders and K-groups of the crossed product.
 */
export function classify_json(p: number, r: string): string;

/**
 * Which points `r^k x` of the orbit window land in `residue mod p^level`.
 */
export function orbit_json(p: number, r: string, x: number, level: number, residue: number, radius: number): string;

/**
 * Coset representatives and multiplication table of `Z_p^x / G_r`.
 */
export function quotient_json(p: number, r: string): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly classify_json: (a: number, b: number, c: number) => [number, number];
    readonly orbit_json: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number];
    readonly quotient_json: (a: number, b: number, c: number) => [number, number];
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
