//! Output layouts printed by `--schema`.

use serde_json::{json, Value};

use crate::output::{SCHEMA_VERSION, SIG_DIGITS};

pub fn schema() -> Value {
    let manifest = json!({
        "command_line": "array of strings",
        "version": "string",
        "schema_version": "integer",
        "tolerances": "object of named tolerances",
        "grids": "object of grid sizes used",
        "seed": "integer or null",
        "threads": "integer",
        "wall_time_seconds": "number"
    });
    json!({
        "schema_version": SCHEMA_VERSION,
        "numbers": format!("{SIG_DIGITS} significant digits; infinities as \"inf\"/\"-inf\" in order fields"),
        "csv": {
            "curve": {
                "header": ["alpha", "gamma_bits", "regime"],
                "alpha": "decimal, inf or -inf; ascending",
                "gamma_bits": "decimal",
                "regime": ["zero", "wyner", "super1", "exact", "negative-ub"],
                "encoding": "UTF-8, comma-separated, LF line endings",
                "manifest": "<out>.manifest.json"
            }
        },
        "json": {
            "compute": {
                "result": {
                    "value": "bits",
                    "alpha": "number or \"inf\"/\"-inf\"",
                    "regime": "string",
                    "epsilon": "number",
                    "tightness": ["exact", "upper-bound"],
                    "witness": "null, {kind: super1, p_star, kappa_log2} or {kind: negative, r_star, q, t}"
                },
                "condition1_holds": "boolean or null",
                "wyner": "bits",
                "gap": "bits or null (upper bound minus Wyner)"
            },
            "epsilon0": ["epsilon0", "lo", "hi", "tolerance", "single_crossing", "scan_points", "bisection_steps", "grid"],
            "condition1": ["epsilon", "holds", "s_range_end", "worst_s", "worst_omega", "grid_points"],
            "phase_scan": {"points": ["epsilon", "gamma_ub_minus_inf", "wyner", "gap", "r_star"]},
            "verify": {
                "pass": "boolean",
                "reports": ["suite", "pass", "worst_violation", "worst_location", "points_checked",
                            "tolerance_used", "skipped", "status", "notes", "checks"]
            },
            "manifest": manifest
        }
    })
}
