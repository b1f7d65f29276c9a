/* tslint:disable */
/* eslint-disable */

export class RegimeSummary {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly discriminant: number;
    readonly kappa_high: number;
    /**
     * Lower edge of the hyperbolic window, NaN when undefined.
     */
    readonly kappa_low: number;
    readonly regime: string;
}

export function asymptote_curve(gamma: number, kappa: number, delta: number, max_length: number, count: number): Float64Array;

export function classify(gamma: number, kappa: number, delta: number): RegimeSummary;

export function interplay_map(gamma: number, length: number, kappa_max: number, delta_max: number, size: number): Float64Array;

export function signal_curve(gamma: number, kappa: number, delta: number, max_length: number, count: number): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_regimesummary_free: (a: number, b: number) => void;
    readonly asymptote_curve: (a: number, b: number, c: number, d: number, e: number) => [number, number];
    readonly classify: (a: number, b: number, c: number) => [number, number, number];
    readonly interplay_map: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly regimesummary_discriminant: (a: number) => number;
    readonly regimesummary_kappa_high: (a: number) => number;
    readonly regimesummary_kappa_low: (a: number) => number;
    readonly regimesummary_regime: (a: number) => [number, number];
    readonly signal_curve: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __externref_table_dealloc: (a: number) => void;
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
