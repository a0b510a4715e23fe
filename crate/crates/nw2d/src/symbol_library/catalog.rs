use super::sign::{pair_label, Sign, ALL_PAIRS, PAIRS};
use serde::{Deserialize, Serialize};

/// Named bilinear symbols of the diagonalized system.
///
/// Naming: the real unknown is the *curl* variable, the complex unknown the
/// *wave* variable. `Curl*` symbols build the curl equation's nonlinearity,
/// `Wave*` the wave equation's, `Constraint*` the constraint relation.
/// Sign arguments select the wave branch of each input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SymbolId {
    /// Curl nonlinearity, (curl, wave branch μ) inputs.
    CurlMixed(Sign),
    /// Curl nonlinearity, (wave μ, wave ν) inputs.
    CurlWaves(Sign, Sign),
    /// Wave nonlinearity, (curl, curl) inputs.
    WaveCurlCurl,
    /// Wave nonlinearity, (curl, wave μ) inputs.
    WaveMixed(Sign),
    /// Wave nonlinearity, (wave μ, wave ν) inputs.
    WaveWaves(Sign, Sign),
    /// Wave-wave symbol after merging mirrored interactions; pairs in `PAIRS`.
    WaveWavesMerged(Sign, Sign),
    /// Constraint, (curl, curl) inputs.
    ConstraintCurlCurl,
    /// Constraint, (curl, wave μ) inputs.
    ConstraintMixed(Sign),
    /// Constraint, (wave μ, wave ν) inputs.
    ConstraintWaves(Sign, Sign),
    /// Quadratic form of the potential-formulation pressure-like term.
    PotentialQuadratic,
    /// Mixed symbol appearing in the energy identity.
    EnergyMixed,
    /// Self-interaction symbol appearing in the energy identity.
    EnergySelf,
    /// Top-order energy symbol for branches (ν, κ).
    EnergyTop(Sign, Sign),
    /// Normal-form symbol; pairs in `PAIRS`.
    NormalForm(Sign, Sign),
    /// Rotational derivative of the normal-form symbol; pairs in `PAIRS`.
    NormalFormRotated(Sign, Sign),
    /// Top-order energy correction symbol for branches (ν, κ).
    TopCorrection(Sign, Sign),
}

impl SymbolId {
    /// Every valid identifier.
    pub fn all() -> Vec<SymbolId> {
        use SymbolId::*;
        let mut v = Vec::new();
        for s in Sign::BOTH {
            v.push(CurlMixed(s));
            v.push(WaveMixed(s));
            v.push(ConstraintMixed(s));
        }
        for (a, b) in ALL_PAIRS {
            v.push(CurlWaves(a, b));
            v.push(WaveWaves(a, b));
            v.push(ConstraintWaves(a, b));
            v.push(EnergyTop(a, b));
            v.push(TopCorrection(a, b));
        }
        for (a, b) in PAIRS {
            v.push(WaveWavesMerged(a, b));
            v.push(NormalForm(a, b));
            v.push(NormalFormRotated(a, b));
        }
        v.extend([WaveCurlCurl, ConstraintCurlCurl, PotentialQuadratic, EnergyMixed, EnergySelf]);
        v
    }

    /// False for merged or normal-form symbols outside the three kept pairs.
    pub fn is_valid(&self) -> bool {
        match *self {
            SymbolId::WaveWavesMerged(a, b)
            | SymbolId::NormalForm(a, b)
            | SymbolId::NormalFormRotated(a, b) => PAIRS.contains(&(a, b)),
            _ => true,
        }
    }

    /// Symbols carrying the factor `ζ × η` (vanishing on parallel pairs).
    pub fn has_null_structure(&self) -> bool {
        !matches!(self, SymbolId::NormalFormRotated(..))
    }

    /// Family name used in reports.
    pub fn family(&self) -> &'static str {
        use SymbolId::*;
        match self {
            CurlMixed(_) => "curl_mixed",
            CurlWaves(..) => "curl_waves",
            WaveCurlCurl => "wave_curl_curl",
            WaveMixed(_) => "wave_mixed",
            WaveWaves(..) => "wave_waves",
            WaveWavesMerged(..) => "wave_waves_merged",
            ConstraintCurlCurl => "constraint_curl_curl",
            ConstraintMixed(_) => "constraint_mixed",
            ConstraintWaves(..) => "constraint_waves",
            PotentialQuadratic => "potential_quadratic",
            EnergyMixed => "energy_mixed",
            EnergySelf => "energy_self",
            EnergyTop(..) => "energy_top",
            NormalForm(..) => "normal_form",
            NormalFormRotated(..) => "normal_form_rotated",
            TopCorrection(..) => "top_correction",
        }
    }

    pub fn label(&self) -> String {
        use SymbolId::*;
        let fam = self.family();
        match *self {
            CurlMixed(s) | WaveMixed(s) | ConstraintMixed(s) => format!("{fam}[{}]", s.symbol()),
            CurlWaves(a, b)
            | WaveWaves(a, b)
            | WaveWavesMerged(a, b)
            | ConstraintWaves(a, b)
            | EnergyTop(a, b)
            | NormalForm(a, b)
            | NormalFormRotated(a, b)
            | TopCorrection(a, b) => format!("{fam}[{}]", pair_label(a, b)),
            _ => fam.to_string(),
        }
    }
}

impl std::fmt::Display for SymbolId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.label())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_are_unique() {
        let all = SymbolId::all();
        let mut labels: Vec<String> = all.iter().map(|s| s.label()).collect();
        labels.sort();
        labels.dedup();
        assert_eq!(labels.len(), all.len());
        assert!(all.iter().all(|s| s.is_valid()));
        assert!(!SymbolId::NormalForm(Sign::Minus, Sign::Plus).is_valid());
    }
}
