/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_regimesummary_free: (a: number, b: number) => void;
export const asymptote_curve: (a: number, b: number, c: number, d: number, e: number) => [number, number];
export const classify: (a: number, b: number, c: number) => [number, number, number];
export const interplay_map: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
export const regimesummary_discriminant: (a: number) => number;
export const regimesummary_kappa_high: (a: number) => number;
export const regimesummary_kappa_low: (a: number) => number;
export const regimesummary_regime: (a: number) => [number, number];
export const signal_curve: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_start: () => void;
