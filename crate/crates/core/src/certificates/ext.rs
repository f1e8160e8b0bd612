//! Nonvanishing certificates for `Ext²_{R₁}(k, F)` and `Ext^{n+1}_R(R/I, F)`.

use num_rational::BigRational;
use num_traits::One;
use serde_json::{json, Value};

use crate::boxmod::{value_string, BoxModule, FieldConfig, Interval};
use crate::complexes::{
    collapse, dualize_free, homology_with, tensor, BoxComplex, HomologyOptions,
};
use crate::error::{Error, Result};
use crate::exponents::{ConstantBasis, ExponentValue, ExponentVector};
use crate::koszul::{binomial, ordinary_koszul, truncated_resolution, TruncationSequence};

use super::escape::{sequence_strings, support_escape, SupportEscapeCertificate};

/// `0 ← R₁ ← F_K ← F_{K−1} ← 0`, the truncated free resolution of `k`:
/// the orthant resolution of `𝔪₁` shifted up by one and augmented by
/// `1_k ↦ x^{e_k}`.
pub fn augmented_resolution(seq: &TruncationSequence) -> Result<BoxComplex> {
    if seq.dimension() != 1 || seq.sigma() != [true] {
        return Err(Error::InvalidParameter(
            "the resolution of k needs a one-variable sequence open along x".into(),
        ));
    }
    let mut c = truncated_resolution(seq.entries())?.shifted(1);
    c.set_term(0, vec![BoxModule::ring(1)]);
    for k in 0..=seq.depth() {
        c.add_entry(1, 0, k, BigRational::one());
    }
    Ok(c)
}

/// A builder for the resolution checked before each escape solve; tests
/// substitute mutated builders.
pub type Resolver<'a> = &'a dyn Fn(&TruncationSequence) -> Result<BoxComplex>;

/// Check `d² = 0`, `H₁ = H₂ = 0` and `H₀ = k[[0, e_K)]` cellwise.
fn precheck(
    c: &BoxComplex,
    seq: &TruncationSequence,
    field: FieldConfig,
) -> Result<Option<String>> {
    if let Some(v) = c.verify()? {
        return Ok(Some(format!("differential check failed: {v}")));
    }
    let h = homology_with(
        c,
        &HomologyOptions {
            field,
            parallel: false,
        },
    )?;
    let e_k = seq.entries()[seq.depth()][0].clone();
    let quotient = BoxModule::new(vec![Interval::bounded(
        ExponentValue::zero(),
        true,
        e_k,
        false,
    )?]);
    for cell in h.arrangement.cells() {
        let expected = h.arrangement.evaluate(&quotient, &cell)?;
        if h.get(&cell, 0) != expected {
            return Ok(Some(format!(
                "H_0 on {} is {}, expected {expected}",
                h.arrangement.cell_label(&cell),
                h.get(&cell, 0)
            )));
        }
        for d in [1, 2] {
            if h.get(&cell, d) != 0 {
                return Ok(Some(format!(
                    "H_{d} on {} is nonzero",
                    h.arrangement.cell_label(&cell)
                )));
            }
        }
    }
    Ok(None)
}

/// The components of the `n = 1` certificate.
#[derive(Clone, Debug)]
pub struct Ext2Components {
    pub k_max: usize,
    pub escape: Vec<SupportEscapeCertificate>,
}

/// Sweep `K = 1..=k_max`: precheck the resolution at each depth, then solve
/// the splitting system with `c = 1` and require it to escape to index `K`.
pub fn ext2_certificate(
    k_max: usize,
    seq: &TruncationSequence,
    field: FieldConfig,
) -> Result<Ext2Components> {
    ext2_certificate_with(k_max, seq, field, &augmented_resolution)
}

/// As [`ext2_certificate`] with a custom resolution builder.
pub fn ext2_certificate_with(
    k_max: usize,
    seq: &TruncationSequence,
    field: FieldConfig,
    resolver: Resolver<'_>,
) -> Result<Ext2Components> {
    if k_max < 2 {
        return Err(Error::InvalidParameter(format!(
            "the escape sweep needs K_max ≥ 2, got {k_max}"
        )));
    }
    let mut escape = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let level = seq.truncate(k)?;
        let c = resolver(&level)?;
        if let Some(reason) = precheck(&c, &level, field)? {
            return Err(Error::EscapeViolated { depth: k, reason });
        }
        let cert = support_escape(k, &BigRational::one(), &level)?;
        if !cert.escapes() {
            return Err(Error::EscapeViolated {
                depth: k,
                reason: format!("forced support {:?} avoids index {k}", cert.forced),
            });
        }
        escape.push(cert);
    }
    Ok(Ext2Components { k_max, escape })
}

/// Dualize the Koszul complex on `x₁^a, …, x_{n−1}^a` (tensored with `R₁`
/// in `x_n`) and collapse `x₁, …, x_{n−1}` to zero. Every differential must
/// vanish; returns the ranks `C(n−1, q)` in cohomological degree `q`.
pub fn dual_koszul_collapse(n: usize, exponent: &ExponentValue) -> Result<Vec<usize>> {
    if n == 0 {
        return Err(Error::InvalidParameter("need n ≥ 1".into()));
    }
    let k = ordinary_koszul(&ExponentVector::new(vec![exponent.clone(); n - 1]))?;
    let k = tensor(&k, &BoxComplex::module(1, vec![BoxModule::ring(1)]));
    let dual = dualize_free(&k)?;
    let coords: Vec<usize> = (0..n - 1).collect();
    let c = collapse(&dual, &coords)?;
    for d in c.degrees() {
        if !c.differential(d).is_empty() {
            return Err(Error::NonzeroDifferential { degree: d });
        }
    }
    Ok((0..n).map(|q| c.rank(-(q as i64))).collect())
}

/// `(p, q, multiplicity)` summands `Ext^p_{R₁}(k, F^{C(n−1,q)})` of `Ext^i`.
pub fn decomposition_table(n: usize, ranks: &[usize]) -> Vec<Vec<(usize, usize, usize)>> {
    (0..=n + 1)
        .map(|i| {
            (0..=2usize)
                .filter_map(|p| {
                    let q = i.checked_sub(p)?;
                    (q < n).then(|| (p, q, ranks[q]))
                })
                .collect()
        })
        .collect()
}

/// A certificate that `Ext^{n+1}_R(R/I, F) ≠ 0`, verified up to depth `k_max`.
#[derive(Clone, Debug)]
pub struct ExtCertificate {
    pub n: usize,
    pub k_max: usize,
    pub field: FieldConfig,
    pub sequence: Vec<String>,
    pub exponent: String,
    pub escape: Vec<SupportEscapeCertificate>,
    pub dual_ranks: Vec<usize>,
    pub table: Vec<Vec<(usize, usize, usize)>>,
}

impl ExtCertificate {
    pub fn target_degree(&self) -> usize {
        self.n + 1
    }

    /// The `(p, q, multiplicity)` summand carrying the nonvanishing.
    pub fn witness(&self) -> (usize, usize, usize) {
        (2, self.n - 1, binomial(self.n - 1, self.n - 1))
    }

    pub fn status(&self) -> String {
        format!("verified-up-to-{}", self.k_max)
    }

    pub fn to_json(&self) -> Value {
        let (p, q, m) = self.witness();
        json!({
            "claim": format!("Ext^{}_R(R/I, F) != 0 for n = {}", self.n + 1, self.n),
            "parameters": {
                "n": self.n,
                "k_max": self.k_max,
                "sequence": self.sequence,
                "exponent": self.exponent,
            },
            "field": self.field.to_string(),
            "components": [
                {
                    "name": "augmented_resolution",
                    "depths": (1..=self.k_max).collect::<Vec<_>>(),
                    "checks": "d^2 = 0, H_1 = H_2 = 0, H_0 = [0, e_K) on every cell",
                },
                {
                    "name": "support_escape",
                    "levels": self.escape.iter().map(SupportEscapeCertificate::to_json).collect::<Vec<_>>(),
                },
                {
                    "name": "dimension_shift",
                    "kind": "symbolic",
                    "statement": "Ext^{i+1}_{R_1}(k, -) = Ext^i_{R_1}(m_1, -) for i >= 1, from 0 <- k <- R_1 <- m_1 <- 0",
                },
                {
                    "name": "dual_koszul_collapse",
                    "ranks": self.dual_ranks,
                },
                {
                    "name": "decomposition",
                    "rows": self.table.iter().enumerate().map(|(i, row)| json!({
                        "i": i,
                        "summands": row.iter().map(|&(p, q, m)| json!({"p": p, "q": q, "multiplicity": m})).collect::<Vec<_>>(),
                    })).collect::<Vec<_>>(),
                    "witness": {"p": p, "q": q, "multiplicity": m},
                },
            ],
            "status": self.status(),
        })
    }
}

/// Assemble the `Ext^{n+1}` certificate from the escape sweep, the dual
/// Koszul collapse and the decomposition table.
pub fn ext_n_plus_1(
    n: usize,
    k_max: usize,
    seq: &TruncationSequence,
    exponent: &ExponentValue,
    field: FieldConfig,
) -> Result<ExtCertificate> {
    ext_n_plus_1_with(n, k_max, seq, exponent, field, &augmented_resolution)
}

pub fn ext_n_plus_1_with(
    n: usize,
    k_max: usize,
    seq: &TruncationSequence,
    exponent: &ExponentValue,
    field: FieldConfig,
    resolver: Resolver<'_>,
) -> Result<ExtCertificate> {
    let components = ext2_certificate_with(k_max, seq, field, resolver)?;
    let dual_ranks = dual_koszul_collapse(n, exponent)?;
    for (q, &r) in dual_ranks.iter().enumerate() {
        if r != binomial(n - 1, q) {
            return Err(Error::NonzeroDifferential {
                degree: -(q as i64),
            });
        }
    }
    let table = decomposition_table(n, &dual_ranks);
    let top = &table[n + 1];
    if top.len() != 1 || top[0] != (2, n - 1, 1) {
        return Err(Error::InvalidParameter(format!(
            "degree {} row is {top:?}",
            n + 1
        )));
    }
    Ok(ExtCertificate {
        n,
        k_max,
        field,
        sequence: sequence_strings(&seq.truncate(k_max)?),
        exponent: value_string(exponent),
        escape: components.escape,
        dual_ranks,
        table,
    })
}

/// Recompute a stored certificate from its parameters and compare.
pub fn verify_certificate(stored: &Value) -> Result<bool> {
    let params = &stored["parameters"];
    let bad = |what: &str| Error::Json(format!("certificate is missing {what}"));
    let n = params["n"].as_u64().ok_or_else(|| bad("parameters.n"))? as usize;
    let k_max = params["k_max"]
        .as_u64()
        .ok_or_else(|| bad("parameters.k_max"))? as usize;
    let mut basis = ConstantBasis::with_builtins();
    let entries = params["sequence"]
        .as_array()
        .ok_or_else(|| bad("parameters.sequence"))?
        .iter()
        .map(|v| {
            let s = v.as_str().ok_or_else(|| bad("sequence entry"))?;
            Ok(ExponentVector::new(vec![ExponentValue::parse(
                s, &mut basis,
            )?]))
        })
        .collect::<Result<Vec<_>>>()?;
    let exponent = ExponentValue::parse(
        params["exponent"]
            .as_str()
            .ok_or_else(|| bad("parameters.exponent"))?,
        &mut basis,
    )?;
    let field: FieldConfig = stored["field"]
        .as_str()
        .ok_or_else(|| bad("field"))?
        .parse()?;
    let seq = TruncationSequence::new(vec![true], entries)?;
    let fresh = ext_n_plus_1(n, k_max, &seq, &exponent, field)?;
    Ok(fresh.to_json() == *stored)
}
