use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use serde_json::{json, Value};

use realexp::boxmod::{BoxModule, BoxSpec, FieldConfig};
use realexp::certificates::{
    augmented_resolution, ext_n_plus_1, fixtures, projective_resolution, verify_certificate,
};
use realexp::complexes::{homology_with, BoxComplex, ComplexSpec, HomologyOptions};
use realexp::exponents::{
    parse_rational, ConstantBasis, ConstantSpec, ExponentGroup, ExponentValue, ExponentVector,
};
use realexp::koszul::{
    flat_resolution, open_koszul, ordinary_koszul, orthant_resolution, tor_of_power_quotient,
    total_koszul_truncated, GroupContext, TruncationSequence,
};
use realexp::selftest::{run_criterion, Depth, SelfTestOptions, CRITERIA};
use realexp::{Error, Result};

use crate::args::*;

/// What a command produced: a JSON result plus optional CSV / grid renderings.
pub struct Output {
    pub json: Value,
    pub csv: Option<String>,
    pub grid: Option<String>,
    /// Exit status for commands whose result is a verdict.
    pub success: bool,
}

impl Output {
    fn json(json: Value) -> Self {
        Output {
            json,
            csv: None,
            grid: None,
            success: true,
        }
    }
}

/// Module files: `{"n": 2, "basis": [...], "boxes": [box...]}`.
#[derive(Deserialize)]
struct ModuleFile {
    n: usize,
    #[serde(default)]
    basis: Vec<ConstantSpec>,
    boxes: Vec<BoxSpec>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::InvalidParameter(format!("cannot read {}: {e}", path.display())))
}

/// JSON from a file, accepting either a bare document or the full output
/// of an earlier command (whose payload sits under `result`).
fn read_result(path: &Path) -> Result<Value> {
    let mut v: Value = serde_json::from_str(&read(path)?)?;
    if v.get("provenance").is_some() {
        v = v["result"].take();
    }
    Ok(v)
}

fn declare(basis: &mut ConstantBasis, specs: &[ConstantSpec]) -> Result<()> {
    for c in specs {
        basis.declare(
            &c.name,
            parse_rational(&c.lo)?,
            parse_rational(&c.hi)?,
            c.class,
        )?;
    }
    Ok(())
}

fn parse_vector(s: &str, n: usize, basis: &mut ConstantBasis) -> Result<ExponentVector> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let parts = if parts.len() == 1 && n > 1 {
        vec![parts[0]; n]
    } else {
        parts
    };
    if parts.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: parts.len(),
        });
    }
    ExponentVector::parse(&parts, basis)
}

fn parse_mask(s: &str, n: usize) -> Result<Vec<bool>> {
    let mask = s
        .split(',')
        .map(|p| match p.trim() {
            "1" | "open" => Ok(true),
            "0" | "closed" => Ok(false),
            other => Err(Error::Parse(format!("σ entries are 0 or 1, got `{other}`"))),
        })
        .collect::<Result<Vec<_>>>()?;
    if mask.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: mask.len(),
        });
    }
    Ok(mask)
}

fn load_group(path: &Path) -> Result<ExponentGroup> {
    ExponentGroup::from_json(&read(path)?)
}

fn load_module(p: &ConstructionArgs) -> Result<(usize, Vec<BoxModule>)> {
    module_from(p.n, p.module.as_deref(), p.module_file.as_ref())
}

fn module_from(
    n: usize,
    name: Option<&str>,
    file: Option<&PathBuf>,
) -> Result<(usize, Vec<BoxModule>)> {
    match (name, file) {
        (Some(name), None) => Ok((n, fixtures::named_module(name, n)?)),
        (None, Some(path)) => {
            let spec: ModuleFile = serde_json::from_str(&read(path)?)?;
            let mut basis = ConstantBasis::with_builtins();
            declare(&mut basis, &spec.basis)?;
            let boxes = spec
                .boxes
                .iter()
                .map(|b| b.build(&mut basis))
                .collect::<Result<Vec<_>>>()?;
            if let Some(b) = boxes.iter().find(|b| b.dimension() != spec.n) {
                return Err(Error::DimensionMismatch {
                    expected: spec.n,
                    found: b.dimension(),
                });
            }
            Ok((spec.n, boxes))
        }
        _ => Err(Error::InvalidParameter(
            "give exactly one of --module and --module-file".into(),
        )),
    }
}

fn sequence(
    p: &ConstructionArgs,
    sigma: &[bool],
    basis: &mut ConstantBasis,
) -> Result<TruncationSequence> {
    if let Some(path) = &p.group {
        let ctx = GroupContext::new(load_group(path)?)?;
        return ctx.ray_truncation(sigma, p.depth);
    }
    let e0 = match &p.e0 {
        Some(s) => parse_vector(s, p.n, basis)?,
        None => ExponentVector::from_integers(&vec![1; p.n]),
    };
    TruncationSequence::geometric(sigma, &e0, p.depth)
}

/// Build a box complex; the total Koszul complex is handled separately.
fn build(kind: Construction, p: &ConstructionArgs) -> Result<BoxComplex> {
    let mut basis = ConstantBasis::with_builtins();
    let eps = |basis: &mut ConstantBasis| -> Result<ExponentVector> {
        let s = p
            .eps
            .as_deref()
            .ok_or_else(|| Error::InvalidParameter("--eps is required".into()))?;
        parse_vector(s, p.n, basis)
    };
    match kind {
        Construction::OpenKoszul => Ok(open_koszul(p.n)),
        Construction::Koszul => ordinary_koszul(&eps(&mut basis)?),
        Construction::Orthant => {
            let sigma = match &p.sigma {
                Some(s) => parse_mask(s, p.n)?,
                None => vec![true; p.n],
            };
            let seq = sequence(p, &sigma, &mut basis)?;
            Ok(orthant_resolution(&sigma, &seq)?.complex)
        }
        Construction::Flat => {
            let (n, m) = load_module(p)?;
            flat_resolution(n, &m)
        }
        Construction::Augmented => {
            let seq = sequence(&ConstructionArgs { n: 1, ..p.clone() }, &[true], &mut basis)?;
            augmented_resolution(&seq)
        }
        Construction::Presolve => {
            let (n, m) = load_module(p)?;
            Ok(projective_resolution(n, &m, p.depth, None)?.complex)
        }
        Construction::TotalKoszul => Err(Error::InvalidParameter(
            "the discretized total Koszul complex has no box form; use `homology --construct total-koszul`"
                .into(),
        )),
    }
}

pub fn construct(args: &ConstructArgs) -> Result<Output> {
    let c = build(args.kind, &args.params)?;
    Ok(Output::json(serde_json::to_value(c.to_spec())?))
}

pub fn homology(args: &HomologyArgs, field: FieldConfig) -> Result<Output> {
    if args.construct == Some(Construction::TotalKoszul) {
        return total_koszul(&args.params, field);
    }
    let complex = match (&args.construct, &args.file) {
        (Some(kind), None) => build(*kind, &args.params)?,
        (None, Some(path)) => {
            let spec: ComplexSpec = serde_json::from_value(read_result(path)?)?;
            BoxComplex::from_spec(&spec, &mut ConstantBasis::with_builtins())?
        }
        _ => {
            return Err(Error::InvalidParameter(
                "give exactly one of --construct and --file".into(),
            ))
        }
    };
    let table = homology_with(
        &complex,
        &HomologyOptions {
            field,
            parallel: true,
        },
    )?;
    Ok(Output {
        json: table.to_json(),
        csv: Some(table.to_csv()),
        grid: table.to_grid(),
        success: true,
    })
}

fn total_koszul(p: &ConstructionArgs, field: FieldConfig) -> Result<Output> {
    let mut basis = ConstantBasis::with_builtins();
    let (_, module) = load_module(p)?;
    let eps = match &p.eps {
        Some(s) => parse_vector(s, p.n, &mut basis)?,
        None => ExponentVector::from_integers(&vec![1; p.n]),
    };
    let d = total_koszul_truncated(&module, &eps)?.discretize(p.m, p.window)?;
    let h = d.homology(field)?;
    let mut csv = String::from("degree,i,dim\n");
    let rows: Vec<Value> = h
        .entries
        .iter()
        .map(|(t, dims)| {
            for (i, v) in dims.iter().enumerate().filter(|(_, v)| **v > 0) {
                let label: Vec<String> = t.iter().map(i64::to_string).collect();
                csv.push_str(&format!("\"{}\",{i},{v}\n", label.join(" ")));
            }
            json!({"degree": t, "homology": dims})
        })
        .collect();
    Ok(Output {
        json: json!({
            "step": d.step().iter().map(realexp::boxmod::value_string).collect::<Vec<_>>(),
            "window_top": d.window_top(),
            "degrees": rows,
            "positive_failures": h.positive_failures(),
        }),
        csv: Some(csv),
        grid: None,
        success: true,
    })
}

pub fn tor(args: &TorArgs) -> Result<Output> {
    let eps = parse_vector(&args.eps, args.n, &mut ConstantBasis::with_builtins())?;
    let dim = tor_of_power_quotient(&eps, args.i)?;
    Ok(Output::json(json!({"i": args.i, "dim": dim})))
}

/// Certificates are cached by parameters when `REALEXP_CACHE_DIR` is set;
/// a cached certificate is re-verified before it is reused.
pub fn ext_cert(args: &ExtCertArgs, field: FieldConfig) -> Result<Output> {
    if let Some(path) = &args.verify {
        let stored = read_result(path)?;
        let ok = verify_certificate(&stored)?;
        return Ok(Output {
            json: json!({"verified": ok}),
            csv: None,
            grid: None,
            success: ok,
        });
    }
    let key = format!(
        "ext-n{}-k{}-{}-{}-{}.json",
        args.n, args.k_max, field, args.e0, args.exponent
    )
    .replace(['/', ':'], "_");
    let cache = std::env::var_os("REALEXP_CACHE_DIR").map(|d| PathBuf::from(d).join(key));
    if let Some(path) = cache.as_ref().filter(|p| p.exists()) {
        if let Ok(v) = serde_json::from_str::<Value>(&read(path)?) {
            if verify_certificate(&v).unwrap_or(false) {
                return Ok(Output::json(v));
            }
        }
    }
    let mut basis = ConstantBasis::with_builtins();
    let e0 = parse_vector(&args.e0, 1, &mut basis)?;
    let exponent = ExponentValue::parse(&args.exponent, &mut basis)?;
    let seq = TruncationSequence::geometric(&[true], &e0, args.k_max)?;
    let cert = ext_n_plus_1(args.n, args.k_max, &seq, &exponent, field)?;
    let json = cert.to_json();
    if let Some(path) = cache {
        if let Some(dir) = path.parent() {
            let _ = fs::create_dir_all(dir);
        }
        let _ = fs::write(&path, serde_json::to_string_pretty(&json)?);
    }
    Ok(Output::json(json))
}

pub fn presolve(args: &PresolveArgs) -> Result<Output> {
    let (n, m) = module_from(args.n, args.module.as_deref(), args.module_file.as_ref())?;
    let r = projective_resolution(n, &m, args.depth, None)?;
    let mut report = r.report();
    report["exact_on_stabilized"] = json!(r.is_exact_on_stabilized());
    if args.complex {
        report["complex"] = serde_json::to_value(r.complex.to_spec())?;
    }
    Ok(Output::json(report))
}

fn parse_axis(s: &str, n: usize) -> Result<usize> {
    let axis = match s {
        "x" => 0,
        "y" => 1,
        "z" => 2,
        other => other.parse().map_err(|_| {
            Error::Parse(format!("axis must be x, y, z or an index, got `{other}`"))
        })?,
    };
    if axis >= n {
        return Err(Error::InvalidParameter(format!(
            "axis {axis} out of range for n = {n}"
        )));
    }
    Ok(axis)
}

pub fn group(args: &GroupArgs) -> Result<Output> {
    let mut g = load_group(&args.file)?;
    let n = g.dimension();
    let need_axis = || {
        args.axis
            .as_deref()
            .ok_or_else(|| Error::InvalidParameter("--axis is required".into()))
            .and_then(|a| parse_axis(a, n))
    };
    let json = match args.query {
        GroupQuery::Ray => {
            let axis = need_axis()?;
            match g.ray_intersection(axis)? {
                None => json!({"axis": axis, "full": true, "generators": null}),
                Some(gens) => {
                    let mut names: Vec<String> =
                        gens.iter().map(realexp::boxmod::value_string).collect();
                    names.sort();
                    json!({"axis": axis, "full": false, "generators": names})
                }
            }
        }
        GroupQuery::Member | GroupQuery::OpenCone => {
            let s = args
                .vector
                .as_deref()
                .ok_or_else(|| Error::InvalidParameter("--vector is required".into()))?;
            let v = parse_vector(s, n, g.basis_mut())?;
            let member = g.is_member(&v)?;
            if args.query == GroupQuery::Member {
                json!({"vector": v.to_string(), "member": member})
            } else {
                json!({
                    "vector": v.to_string(),
                    "member": member,
                    "in_positive_cone": member && g.in_positive_cone(&v)?,
                    "in_open_cone": member && g.in_open_cone(&v)?,
                })
            }
        }
        GroupQuery::Sequence => {
            let axis = need_axis()?;
            let ctx = GroupContext::new(g)?;
            let seq = ctx.ray_sequence(axis, args.count)?;
            json!({
                "axis": axis,
                "sequence": seq.iter().map(realexp::boxmod::value_string).collect::<Vec<_>>(),
            })
        }
    };
    Ok(Output::json(json))
}

pub fn selftest(args: &SelftestArgs, seed: u64) -> Result<Output> {
    let opts = SelfTestOptions {
        depth: match args.depth {
            SelftestDepth::Small => Depth::Small,
            SelftestDepth::Full => Depth::Full,
        },
        seed,
        corrupt: args.corrupt,
    };
    let ids: Vec<u8> = if args.only.is_empty() {
        CRITERIA.iter().map(|c| c.0).collect()
    } else {
        args.only.clone()
    };
    let mut rows = Vec::new();
    let mut failed = Vec::new();
    for id in ids {
        let r = run_criterion(id, &opts);
        eprintln!(
            "criterion {:>2} ({}): {} [{:.2}s] {}",
            r.id,
            r.name,
            if r.passed { "PASS" } else { "FAIL" },
            r.seconds,
            r.detail
        );
        if !r.passed {
            failed.push(r.id);
        }
        // timings stay on stderr so reports are reproducible
        rows.push(json!({"id": r.id, "name": r.name, "passed": r.passed, "detail": r.detail}));
    }
    Ok(Output {
        json: json!({"criteria": rows, "failed": failed}),
        csv: None,
        grid: None,
        success: failed.is_empty(),
    })
}
