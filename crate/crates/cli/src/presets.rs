//! Named figure presets: one-command reproduction of every model-generated
//! curve shipped with the artifact. Each preset is a complete key=value
//! config; a user config file overlays (and can override) the preset.

/// Returns the key=value text of a named preset.
pub fn preset(name: &str) -> Option<&'static str> {
    Some(match name {
        // Reference spectrum: omega_34 = 10, 9:1 drive intensities at total
        // 1e-4, opposite unit dipole ratios. Resonance dip near
        // delta = 1.58e-5.
        "fig2" => {
            "gamma_opt = 1\n\
             gamma_exc = 2\n\
             gamma_12 = 0\n\
             omega_34 = 10\n\
             rabi_1 = 9.486832980505138e-3\n\
             rabi_2 = 3.1622776601683795e-3\n\
             p_1 = 1\n\
             p_2 = -1\n\
             delta_min = -5e-4\n\
             delta_max = 5e-4\n\
             delta_steps = 201\n\
             path = exact\n"
        }
        // Shift vs p_2 in the weak-coupling regime (quadratic dependence).
        "fig3" => {
            "gamma_opt = 1\n\
             gamma_exc = 2\n\
             gamma_12 = 0\n\
             omega_34 = 10\n\
             rabi_1 = 9.486832980505138e-3\n\
             rabi_2 = 3.1622776601683795e-3\n\
             p_1 = 1\n\
             p_2 = -1\n\
             p1_min = 1\n\
             p2_min = -10\n\
             p2_max = 10\n\
             p2_steps = 81\n\
             path = exact\n"
        }
        // Strong-drive spectra, 10:1 intensities at total 0.1: persisting
        // dip for equal dipole ratios.
        "fig4a" => {
            "gamma_opt = 1\n\
             gamma_exc = 2\n\
             gamma_12 = 0\n\
             omega_34 = 1\n\
             rabi_1 = 3.015113445777636e-1\n\
             rabi_2 = 9.534625892455922e-2\n\
             p_1 = 1\n\
             p_2 = 1\n\
             delta_min = -1\n\
             delta_max = 1\n\
             delta_steps = 201\n\
             path = exact\n"
        }
        // Same drive with antisymmetric dipole ratios: the dip collapses as
        // omega_34 decreases (rerun with omega_34 in {10, 1, 0.5, 0.1}).
        "fig4b" => {
            "gamma_opt = 1\n\
             gamma_exc = 2\n\
             gamma_12 = 0\n\
             omega_34 = 10\n\
             rabi_1 = 3.015113445777636e-1\n\
             rabi_2 = 9.534625892455922e-2\n\
             p_1 = -1\n\
             p_2 = 1\n\
             delta_min = -1\n\
             delta_max = 1\n\
             delta_steps = 201\n\
             path = exact\n"
        }
        // Shift map at strong coupling (omega_34 = 0.5), equal drives:
        // zero crossing at p_2 = p_1 and extremum-then-decay of the
        // width-normalized shift.
        "fig5" => {
            "gamma_opt = 1\n\
             gamma_exc = 2\n\
             gamma_12 = 0\n\
             omega_34 = 0.5\n\
             rabi_1 = 7.0710678118654755e-3\n\
             rabi_2 = 7.0710678118654755e-3\n\
             p_1 = 1\n\
             p_2 = 1\n\
             p1_min = 1\n\
             p2_min = 0\n\
             p2_max = 10\n\
             p2_steps = 21\n\
             path = rational\n"
        }
        // Ratio map alpha2/alpha1 over the dipole-ratio plane at 2:1
        // intensities, omega_34 = 2.
        "fig6a" => {
            "gamma_opt = 1\n\
             gamma_exc = 2\n\
             gamma_12 = 0\n\
             omega_34 = 2\n\
             rabi_1 = 1.4142135623730951e-2\n\
             rabi_2 = 1e-2\n\
             p_1 = 1\n\
             p_2 = -2\n\
             p1_min = -3\n\
             p1_max = 3\n\
             p1_steps = 13\n\
             p2_min = -3\n\
             p2_max = 3\n\
             p2_steps = 13\n\
             path = rational\n"
        }
        // Same map at small splitting omega_34 = 0.2 (resonance-absent
        // cells appear for opposite-sign dipole ratios).
        "fig6b" => {
            "gamma_opt = 1\n\
             gamma_exc = 2\n\
             gamma_12 = 0\n\
             omega_34 = 0.2\n\
             rabi_1 = 1.4142135623730951e-2\n\
             rabi_2 = 1e-2\n\
             p_1 = 1\n\
             p_2 = -2\n\
             p1_min = -3\n\
             p1_max = 3\n\
             p1_steps = 13\n\
             p2_min = -3\n\
             p2_max = 3\n\
             p2_steps = 13\n\
             path = rational\n"
        }
        // Shift vs intensity: complete compensation at equal drives with
        // p = (1, -1); neighboring ratios bracket it.
        "fig7a" => {
            "gamma_opt = 1\n\
             gamma_exc = 2\n\
             gamma_12 = 0\n\
             omega_34 = 1\n\
             rabi_1 = 1e-2\n\
             rabi_2 = 1e-2\n\
             p_1 = 1\n\
             p_2 = -1\n\
             ratios = 0.5, 1, 2\n\
             x_grid = 2.5e-4, 5e-4, 1e-3, 2e-3, 4e-3, 8e-3, 1.6e-2, 3.2e-2\n\
             path = rational\n"
        }
        // Shift vs intensity at p_2 = -0.5: the S(x) extremum moves along
        // x as the intensity ratio approaches the cancellation value 0.5.
        "fig7b" => {
            "gamma_opt = 1\n\
             gamma_exc = 2\n\
             gamma_12 = 0\n\
             omega_34 = 1\n\
             rabi_1 = 1e-2\n\
             rabi_2 = 1e-2\n\
             p_1 = 1\n\
             p_2 = -0.5\n\
             ratios = 0.3, 0.4, 0.45\n\
             x_grid = 2.5e-4, 5e-4, 1e-3, 2e-3, 4e-3, 8e-3, 1.6e-2, 3.2e-2\n\
             path = rational\n"
        }
        _ => return None,
    })
}

/// All preset names, for error messages.
pub const PRESET_NAMES: [&str; 9] = [
    "fig2", "fig3", "fig4a", "fig4b", "fig5", "fig6a", "fig6b", "fig7a", "fig7b",
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{KeyValues, RunConfig};

    #[test]
    fn every_preset_parses_into_a_valid_config() {
        for name in PRESET_NAMES {
            let text = preset(name).unwrap();
            let kv = KeyValues::parse(text, name).unwrap();
            let cfg = RunConfig::from_key_values(kv, None)
                .unwrap_or_else(|e| panic!("preset {name}: {e}"));
            assert!(cfg.params.gamma_opt > 0.0);
        }
    }

    #[test]
    fn unknown_preset_is_none() {
        assert!(preset("fig99").is_none());
    }
}
