/**
 * Transfer parameters and client-side validation.
 *
 * Ranges mirror the server exactly: the UI must never emit a request the
 * service would reject with 422.
 */
export const STRUCTURE_MODES = ["illumination", "literal", "keep-input"];
export const PARAM_RANGES = {
    alpha: { min: 0, max: 1 },
    beta: { min: 1, max: 100 },
    softenSigma: { min: 0.5, max: 64 },
};
export const DEFAULT_PARAMS = {
    alpha: 0.95,
    beta: 30,
    illumination: true,
    structureMode: "illumination",
    airbangs: false,
    skipPreprocess: false,
    softenSigma: 6,
};
/** Clamp a raw slider value into its declared range; NaN falls to min. */
export function clampParam(name, value) {
    const { min, max } = PARAM_RANGES[name];
    if (Number.isNaN(value))
        return min;
    return Math.min(max, Math.max(min, value));
}
export function isStructureMode(value) {
    return STRUCTURE_MODES.includes(value);
}
/** Throws if any field is outside the range the server accepts. */
export function validateParams(params) {
    const { alpha, beta, softenSigma, structureMode } = params;
    if (!(alpha >= PARAM_RANGES.alpha.min && alpha <= PARAM_RANGES.alpha.max)) {
        throw new RangeError(`alpha out of range: ${alpha}`);
    }
    if (!(beta >= PARAM_RANGES.beta.min && beta <= PARAM_RANGES.beta.max)) {
        throw new RangeError(`beta out of range: ${beta}`);
    }
    if (!(softenSigma > 0)) {
        throw new RangeError(`softenSigma must be positive: ${softenSigma}`);
    }
    if (!isStructureMode(structureMode)) {
        throw new RangeError(`unknown structure mode: ${structureMode}`);
    }
}
/** Form-field encoding used by POST /transfer. */
export function paramsToFormFields(params) {
    validateParams(params);
    return {
        alpha: String(params.alpha),
        beta: String(params.beta),
        illumination: params.illumination ? "true" : "false",
        structure_mode: params.structureMode,
        airbangs: params.airbangs ? "true" : "false",
        skip_preprocess: params.skipPreprocess ? "true" : "false",
        soften_sigma: String(params.softenSigma),
    };
}
