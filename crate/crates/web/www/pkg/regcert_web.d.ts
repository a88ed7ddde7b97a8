/* tslint:disable */
/* eslint-disable */

/**
 * The full certificate as pretty JSON.
 */
export function analyzeGraph(input: string, seed: number): string;

export function generateGraph(kind: string, n: number, d: number, seed: number): string;

/**
 * Spectrum, edges, and the thresholds for the graph's degree.
 */
export function spectrumView(input: string): string;

/**
 * All threshold curves for `d` in `d_min..=d_max`.
 */
export function thresholdCurves(d_min: number, d_max: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly analyzeGraph: (a: number, b: number, c: number) => [number, number, number, number];
    readonly generateGraph: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly spectrumView: (a: number, b: number) => [number, number, number, number];
    readonly thresholdCurves: (a: number, b: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
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
