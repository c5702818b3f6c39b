/* tslint:disable */
/* eslint-disable */

/**
 * Binary digits of the 2-adic constant forced by the rows `k <= k_max`.
 */
export function fit_rho(k_max: number, bits?: number | null): string;

/**
 * Preperiod and smallest period of `t_n mod m`, next to the closed form.
 */
export function t_mod_period(m: number): string;

/**
 * Rows `n = 0..=4k_max+3` of computed and predicted 2-adic valuations of
 * `t_n`, `t_n(1,-1)`, `t_n^e` and `t_n^o`.
 */
export function valuation_table(k_max: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly fit_rho: (a: number, b: number) => [number, number];
    readonly t_mod_period: (a: number) => [number, number];
    readonly valuation_table: (a: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
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
