/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const fit_rho: (a: number, b: number) => [number, number];
export const t_mod_period: (a: number) => [number, number];
export const valuation_table: (a: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
