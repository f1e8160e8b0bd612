//! Named modules used by the certificates and the self-test.

use crate::boxmod::{BoxModule, Interval};
use crate::complexes::BoxComplex;
use crate::error::{Error, Result};
use crate::exponents::{ExponentValue, ExponentVector};
use crate::koszul::TruncationSequence;

fn half_open_unit() -> Interval {
    Interval::bounded(
        ExponentValue::zero(),
        true,
        ExponentValue::from_integer(1),
        false,
    )
    .expect("nonempty")
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter("fixture needs n ≥ 1".into()));
    }
    Ok(())
}

/// `k = R/𝔪`.
pub fn residue_field(n: usize) -> Vec<BoxModule> {
    vec![BoxModule::residue_field(n)]
}

/// `R/I` for `I = ⟨x₁, …, x_{n−1}⟩ + 𝔪₁` with `𝔪₁ = ⟨x_n^ε : ε > 0⟩`:
/// supported on `[0,1)^{n−1} × {0}`.
pub fn quotient_by_i(n: usize) -> Result<Vec<BoxModule>> {
    check_n(n)?;
    let mut intervals = vec![half_open_unit(); n - 1];
    intervals.push(Interval::point(ExponentValue::zero()));
    Ok(vec![BoxModule::new(intervals)])
}

/// `R/I′` for `I′ = ⟨x₁, …, x_{n−1}⟩ + ⟨x_n^ε : ε > 1⟩`: the unit cube
/// `[0,1)^{n−1} × [0,1]`, neither open nor closed.
pub fn quotient_by_i_prime(n: usize) -> Result<Vec<BoxModule>> {
    check_n(n)?;
    let mut intervals = vec![half_open_unit(); n - 1];
    intervals.push(
        Interval::bounded(
            ExponentValue::zero(),
            true,
            ExponentValue::from_integer(1),
            true,
        )
        .expect("nonempty"),
    );
    Ok(vec![BoxModule::new(intervals)])
}

/// `B_n^ε = R/⟨x^ε⟩`, the half-open box `∏ [0, εᵢ)`.
pub fn power_quotient(eps: &ExponentVector) -> Result<Vec<BoxModule>> {
    if !eps.is_strictly_positive()? {
        return Err(Error::InvalidParameter(format!(
            "ε must be positive, got {eps}"
        )));
    }
    let intervals = eps
        .iter()
        .map(|e| Interval::bounded(ExponentValue::zero(), true, e.clone(), false))
        .collect::<Result<_>>()?;
    Ok(vec![BoxModule::new(intervals)])
}

/// `F_K = ⊕_{k≤K} ⟨x^{e_k}⟩` as a complex concentrated in degree 0.
pub fn truncated_f(seq: &TruncationSequence) -> BoxComplex {
    BoxComplex::module(
        seq.dimension(),
        seq.entries().iter().map(BoxModule::free).collect(),
    )
}

/// Named module fixtures, for the command line and the self-test.
pub fn named_module(name: &str, n: usize) -> Result<Vec<BoxModule>> {
    match name {
        "k" | "residue-field" => Ok(residue_field(n)),
        "R" | "ring" => Ok(vec![BoxModule::ring(n)]),
        "R/I" | "quotient-i" => quotient_by_i(n),
        "R/I'" | "quotient-i-prime" => quotient_by_i_prime(n),
        "B" | "power-quotient" => power_quotient(&ExponentVector::from_integers(&vec![1; n])),
        _ => Err(Error::InvalidParameter(format!("unknown fixture {name}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        assert_eq!(quotient_by_i(2).unwrap()[0].to_string(), "[0,1) x {0}");
        assert_eq!(quotient_by_i(1).unwrap()[0].to_string(), "{0}");
        assert_eq!(
            quotient_by_i_prime(2).unwrap()[0].to_string(),
            "[0,1) x [0,1]"
        );
        assert_eq!(
            power_quotient(&ExponentVector::from_integers(&[1, 2])).unwrap()[0].to_string(),
            "[0,1) x [0,2)"
        );
        let seq = TruncationSequence::geometric(&[true], &ExponentVector::from_integers(&[1]), 2)
            .unwrap();
        assert_eq!(truncated_f(&seq).rank(0), 3);
        assert!(named_module("nope", 2).is_err());
    }
}
