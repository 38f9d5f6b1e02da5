//! Energy and emissions from a configured average power draw.

const JOULES_PER_KWH: f64 = 3_600_000.0;

/// `watts * seconds / 3.6e6`.
pub fn estimate_energy_kwh(power_watts: f64, seconds: f64) -> f64 {
    power_watts * seconds / JOULES_PER_KWH
}

/// `energy_kwh * intensity_kg_per_kwh`.
pub fn estimate_co2_kg(energy_kwh: f64, intensity_kg_per_kwh: f64) -> f64 {
    energy_kwh * intensity_kg_per_kwh
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn energy_examples() {
        assert!((estimate_energy_kwh(100.0, 36.0) - 0.001).abs() < 1e-15);
        assert_eq!(estimate_energy_kwh(0.0, 1234.0), 0.0);
        assert!((estimate_energy_kwh(50.0, 7200.0) - 0.1).abs() < 1e-15);
    }

    #[test]
    fn co2_examples() {
        assert!((estimate_co2_kg(0.001, 0.4) - 0.0004).abs() < 1e-18);
        assert_eq!(estimate_co2_kg(0.0, 0.4), 0.0);
        assert_eq!(estimate_co2_kg(1.0, 0.0), 0.0);
    }
}
