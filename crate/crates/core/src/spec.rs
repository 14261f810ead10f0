//! JSON function specifications: the exchange format used by the command
//! line tools. Parse errors carry a JSON pointer to the offending node.

use serde_json::{json, Value};

use crate::algebra::{ImaginaryUnit, Quaternion};
use crate::domain::{CircularDomain, Region};
use crate::error::{Error, Result};
use crate::gallery::GallerySpec;
use crate::products;
use crate::slice::SliceFunction;
use crate::stem::{StemBackend, StemFunction};

fn err(pointer: &str, message: impl Into<String>) -> Error {
    Error::Spec {
        pointer: pointer.to_string(),
        message: message.into(),
    }
}

/// Accepts a plain number or the strings "inf" / "-inf" for unbounded rect
/// edges, which plain JSON cannot express.
fn parse_bound(v: &Value, ptr: &str) -> Result<f64> {
    match v {
        Value::Number(n) => n
            .as_f64()
            .ok_or_else(|| err(ptr, "number out of f64 range")),
        Value::String(s) if s == "inf" => Ok(f64::INFINITY),
        Value::String(s) if s == "-inf" => Ok(f64::NEG_INFINITY),
        _ => Err(err(ptr, "expected a number or \"inf\" / \"-inf\"")),
    }
}

fn bound_to_json(x: f64) -> Value {
    if x == f64::INFINITY {
        json!("inf")
    } else if x == f64::NEG_INFINITY {
        json!("-inf")
    } else {
        json!(x)
    }
}

fn parse_f64(v: &Value, ptr: &str) -> Result<f64> {
    v.as_f64().ok_or_else(|| err(ptr, "expected a number"))
}

fn parse_pair(v: &Value, ptr: &str) -> Result<(f64, f64)> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| err(ptr, "expected an array of two bounds"))?;
    Ok((
        parse_bound(&arr[0], &format!("{}/0", ptr))?,
        parse_bound(&arr[1], &format!("{}/1", ptr))?,
    ))
}

fn parse_quaternion(v: &Value, ptr: &str) -> Result<Quaternion> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 4)
        .ok_or_else(|| err(ptr, "expected an array [w, x1, x2, x3]"))?;
    let mut c = [0.0; 4];
    for (i, x) in arr.iter().enumerate() {
        c[i] = parse_f64(x, &format!("{}/{}", ptr, i))?;
    }
    Ok(Quaternion::from_array(c))
}

fn parse_unit(v: &Value, ptr: &str) -> Result<ImaginaryUnit> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 3)
        .ok_or_else(|| err(ptr, "expected an array [x1, x2, x3]"))?;
    let mut c = [0.0; 3];
    for (i, x) in arr.iter().enumerate() {
        c[i] = parse_f64(x, &format!("{}/{}", ptr, i))?;
    }
    ImaginaryUnit::from_components(c[0], c[1], c[2])
        .map_err(|e| err(ptr, format!("{}", e)))
}

pub fn parse_domain(v: &Value, ptr: &str) -> Result<CircularDomain> {
    let obj = v.as_object().ok_or_else(|| err(ptr, "expected an object"))?;
    let regions_v = obj
        .get("regions")
        .and_then(|r| r.as_array())
        .ok_or_else(|| err(&format!("{}/regions", ptr), "expected an array"))?;
    let mut regions = Vec::new();
    for (i, rv) in regions_v.iter().enumerate() {
        let rptr = format!("{}/regions/{}", ptr, i);
        let robj = rv
            .as_object()
            .ok_or_else(|| err(&rptr, "expected an object"))?;
        let kind = robj
            .get("type")
            .and_then(|t| t.as_str())
            .ok_or_else(|| err(&format!("{}/type", rptr), "expected \"rect\" or \"disk\""))?;
        let region = match kind {
            "rect" => Region::Rect {
                alpha: parse_pair(
                    robj.get("alpha")
                        .ok_or_else(|| err(&rptr, "missing alpha"))?,
                    &format!("{}/alpha", rptr),
                )?,
                beta: parse_pair(
                    robj.get("beta").ok_or_else(|| err(&rptr, "missing beta"))?,
                    &format!("{}/beta", rptr),
                )?,
            },
            "disk" => {
                let c = parse_pair(
                    robj.get("center")
                        .ok_or_else(|| err(&rptr, "missing center"))?,
                    &format!("{}/center", rptr),
                )?;
                Region::Disk {
                    center: c,
                    radius: parse_f64(
                        robj.get("radius")
                            .ok_or_else(|| err(&rptr, "missing radius"))?,
                        &format!("{}/radius", rptr),
                    )?,
                }
            }
            other => {
                return Err(err(
                    &format!("{}/type", rptr),
                    format!("unknown region type {:?}", other),
                ))
            }
        };
        regions.push(region);
    }
    let exclude = obj
        .get("exclude_real")
        .map(|b| {
            b.as_bool()
                .ok_or_else(|| err(&format!("{}/exclude_real", ptr), "expected a boolean"))
        })
        .transpose()?
        .unwrap_or(false);
    let domain = if exclude {
        CircularDomain::new_punctured(regions)
    } else {
        CircularDomain::new(regions)
    };
    domain.map_err(|e| err(ptr, format!("{}", e)))
}

fn parse_stem(v: &Value, ptr: &str, domain: Option<&CircularDomain>) -> Result<SliceFunction> {
    let obj = v.as_object().ok_or_else(|| err(ptr, "expected an object"))?;
    let kind = obj
        .get("type")
        .and_then(|t| t.as_str())
        .ok_or_else(|| err(&format!("{}/type", ptr), "missing stem type"))?;
    let need_domain = || {
        domain
            .cloned()
            .ok_or_else(|| err(ptr, "this stem type requires a top-level domain"))
    };
    match kind {
        "polynomial" => {
            let coeffs_v = obj
                .get("coeffs")
                .and_then(|c| c.as_array())
                .ok_or_else(|| err(&format!("{}/coeffs", ptr), "expected an array"))?;
            let mut coeffs = Vec::new();
            for (i, c) in coeffs_v.iter().enumerate() {
                coeffs.push(parse_quaternion(c, &format!("{}/coeffs/{}", ptr, i))?);
            }
            Ok(SliceFunction::induce(StemFunction::polynomial(
                coeffs,
                need_domain()?,
            )))
        }
        "constant" => {
            let a = parse_quaternion(
                obj.get("a").ok_or_else(|| err(ptr, "missing a"))?,
                &format!("{}/a", ptr),
            )?;
            let b = parse_quaternion(
                obj.get("b").ok_or_else(|| err(ptr, "missing b"))?,
                &format!("{}/b", ptr),
            )?;
            Ok(SliceFunction::induce(StemFunction::constant(
                a,
                b,
                need_domain()?,
            )))
        }
        "gallery" => {
            let name = obj
                .get("name")
                .and_then(|n| n.as_str())
                .ok_or_else(|| err(&format!("{}/name", ptr), "missing gallery name"))?;
            let unit = |key: &str| -> Result<ImaginaryUnit> {
                parse_unit(
                    obj.get(key)
                        .ok_or_else(|| err(ptr, format!("missing {}", key)))?,
                    &format!("{}/{}", ptr, key),
                )
            };
            let real = |key: &str| -> Result<f64> {
                parse_f64(
                    obj.get(key)
                        .ok_or_else(|| err(ptr, format!("missing {}", key)))?,
                    &format!("{}/{}", ptr, key),
                )
            };
            let spec = match name {
                "slice_constant" => GallerySpec::SliceConstant { j: unit("J")? },
                "max_modulus_cex" => GallerySpec::MaxModulusCex {
                    j: unit("J")?,
                    c: real("c")?,
                    r: real("r")?,
                },
                "open_mapping_cex" => GallerySpec::OpenMappingCex { j: unit("J")? },
                "monomial" => GallerySpec::Monomial {
                    n: obj
                        .get("n")
                        .and_then(|n| n.as_u64())
                        .ok_or_else(|| err(&format!("{}/n", ptr), "expected an integer"))?
                        as usize,
                    domain: need_domain()?,
                },
                "binomial_zero" => GallerySpec::BinomialZero {
                    a: parse_quaternion(
                        obj.get("a").ok_or_else(|| err(ptr, "missing a"))?,
                        &format!("{}/a", ptr),
                    )?,
                    domain: need_domain()?,
                },
                other => {
                    return Err(err(
                        &format!("{}/name", ptr),
                        format!("unknown gallery name {:?}", other),
                    ))
                }
            };
            spec.build()
        }
        "product" => {
            let factors = obj
                .get("factors")
                .and_then(|f| f.as_array())
                .filter(|f| f.len() == 2)
                .ok_or_else(|| err(&format!("{}/factors", ptr), "expected two factors"))?;
            let f = parse_stem(&factors[0], &format!("{}/factors/0", ptr), domain)?;
            let g = parse_stem(&factors[1], &format!("{}/factors/1", ptr), domain)?;
            products::slice_product(&f, &g).map_err(|e| err(ptr, format!("{}", e)))
        }
        "reciprocal" => {
            let inner = parse_stem(
                obj.get("of").ok_or_else(|| err(ptr, "missing of"))?,
                &format!("{}/of", ptr),
                domain,
            )?;
            let r = products::reciprocal(&inner).map_err(|e| err(ptr, format!("{}", e)))?;
            Ok(r.function().clone())
        }
        "derivative" => {
            let inner = parse_stem(
                obj.get("of").ok_or_else(|| err(ptr, "missing of"))?,
                &format!("{}/of", ptr),
                domain,
            )?;
            Ok(crate::calculus::d_dx(
                &inner,
                &crate::calculus::DerivativeConfig::default(),
            ))
        }
        other => Err(err(
            &format!("{}/type", ptr),
            format!("unknown stem type {:?}", other),
        )),
    }
}

/// Parses a function spec document: `{"domain": {...}, "stem": {...}}`. The
/// domain may be omitted when the stem resolves it itself (gallery names
/// with a fixed domain).
pub fn parse_function_spec(text: &str) -> Result<SliceFunction> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| err("", format!("invalid JSON: {}", e)))?;
    let obj = v.as_object().ok_or_else(|| err("", "expected an object"))?;
    let domain = obj
        .get("domain")
        .map(|d| parse_domain(d, "/domain"))
        .transpose()?;
    let stem_v = obj
        .get("stem")
        .ok_or_else(|| err("", "missing stem"))?;
    parse_stem(stem_v, "/stem", domain.as_ref())
}

pub fn emit_domain(d: &CircularDomain) -> Value {
    let regions: Vec<Value> = d
        .regions()
        .iter()
        .map(|r| match r {
            Region::Rect { alpha, beta } => json!({
                "type": "rect",
                "alpha": [bound_to_json(alpha.0), bound_to_json(alpha.1)],
                "beta": [bound_to_json(beta.0), bound_to_json(beta.1)],
            }),
            Region::Disk { center, radius } => json!({
                "type": "disk",
                "center": [center.0, center.1],
                "radius": radius,
            }),
        })
        .collect();
    json!({ "regions": regions, "exclude_real": d.excludes_real() })
}

/// Serializes polynomial and constant backends; derived callable backends
/// have no closed description and are rejected.
pub fn emit_function_spec(f: &SliceFunction) -> Result<String> {
    let stem = match f.stem().backend() {
        StemBackend::Polynomial(coeffs) => json!({
            "type": "polynomial",
            "coeffs": coeffs.iter().map(|q| q.to_array()).collect::<Vec<_>>(),
        }),
        StemBackend::Constant(a, b) => json!({
            "type": "constant",
            "a": a.to_array(),
            "b": b.to_array(),
        }),
        StemBackend::Callable(_) => {
            return Err(Error::Argument(
                "callable stem backends are not serializable".into(),
            ))
        }
    };
    let doc = json!({ "domain": emit_domain(f.domain()), "stem": stem });
    serde_json::to_string_pretty(&doc).map_err(|e| Error::Argument(e.to_string()))
}

/// Emits the JSON spec for a gallery entry.
pub fn emit_gallery_spec(spec: &GallerySpec) -> Value {
    match spec {
        GallerySpec::SliceConstant { j } => json!({
            "stem": { "type": "gallery", "name": "slice_constant", "J": <[f64; 3]>::from(*j) }
        }),
        GallerySpec::MaxModulusCex { j, c, r } => json!({
            "stem": { "type": "gallery", "name": "max_modulus_cex",
                      "J": <[f64; 3]>::from(*j), "c": c, "r": r }
        }),
        GallerySpec::OpenMappingCex { j } => json!({
            "stem": { "type": "gallery", "name": "open_mapping_cex", "J": <[f64; 3]>::from(*j) }
        }),
        GallerySpec::Monomial { n, domain } => json!({
            "domain": emit_domain(domain),
            "stem": { "type": "gallery", "name": "monomial", "n": n }
        }),
        GallerySpec::BinomialZero { a, domain } => json!({
            "domain": emit_domain(domain),
            "stem": { "type": "gallery", "name": "binomial_zero", "a": a.to_array() }
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ONE;

    const RECT: &str = r#"{"regions":[{"type":"rect","alpha":[-2,2],"beta":[0.5,2]}],"exclude_real":false}"#;

    fn doc(stem: &str) -> String {
        format!(r#"{{"domain":{},"stem":{}}}"#, RECT, stem)
    }

    #[test]
    fn parse_identity_polynomial() {
        let f = parse_function_spec(&doc(
            r#"{"type":"polynomial","coeffs":[[0,0,0,0],[1,0,0,0]]}"#,
        ))
        .unwrap();
        let x = Quaternion::new(0.5, 1.0, 0.3, 0.0);
        assert!(f.eval(x).unwrap().approx_eq(x, 1e-14));
    }

    #[test]
    fn constant_stem_matches_gallery() {
        let f = parse_function_spec(&doc(r#"{"type":"constant","a":[1,0,0,0],"b":[0,0,-1,0]}"#))
            .unwrap();
        let g = crate::gallery::slice_constant_example(ImaginaryUnit::j());
        let x = Quaternion::new(0.3, 1.2, 0.0, 0.5);
        assert!(f.eval(x).unwrap().approx_eq(g.eval(x).unwrap(), 1e-13));
    }

    #[test]
    fn malformed_coefficient_is_a_pointer_error() {
        let e = parse_function_spec(&doc(r#"{"type":"polynomial","coeffs":[[0,0,0]]}"#))
            .unwrap_err();
        match e {
            Error::Spec { pointer, .. } => assert_eq!(pointer, "/stem/coeffs/0"),
            other => panic!("expected spec error, got {:?}", other),
        }
    }

    #[test]
    fn negative_beta_region_rejected() {
        let e = parse_function_spec(
            r#"{"domain":{"regions":[{"type":"rect","alpha":[0,1],"beta":[-1,1]}]},
                "stem":{"type":"polynomial","coeffs":[[1,0,0,0]]}}"#,
        )
        .unwrap_err();
        assert!(matches!(e, Error::Spec { .. }));
    }

    #[test]
    fn infinite_bounds_round_trip() {
        let f = parse_function_spec(
            r#"{"domain":{"regions":[{"type":"rect","alpha":["-inf","inf"],"beta":[0,"inf"]}],
                "exclude_real":true},
                "stem":{"type":"polynomial","coeffs":[[0,0,0,0],[1,0,0,0]]}}"#,
        )
        .unwrap();
        assert!(!f.domain().is_bounded());
        let emitted = emit_function_spec(&f).unwrap();
        let g = parse_function_spec(&emitted).unwrap();
        let x = Quaternion::new(3.0, 0.0, -2.0, 1.0);
        assert!(f.eval(x).unwrap().approx_eq(g.eval(x).unwrap(), 1e-14));
        assert!(g.eval(Quaternion::real(1.0)).is_err());
    }

    #[test]
    fn gallery_specs_resolve() {
        let f = parse_function_spec(
            r#"{"stem":{"type":"gallery","name":"open_mapping_cex","J":[0,1,0]}}"#,
        )
        .unwrap();
        let x = Quaternion::new(0.5, 0.0, 1.5, 0.0);
        assert!(f.eval(x).unwrap().approx_eq(x * 2.0, 1e-13));

        let e = parse_function_spec(
            r#"{"stem":{"type":"gallery","name":"max_modulus_cex","J":[0,1,0],"c":1,"r":2}}"#,
        );
        assert!(e.is_err());
    }

    #[test]
    fn composite_product_spec() {
        let f = parse_function_spec(&doc(
            r#"{"type":"product","factors":[
                {"type":"polynomial","coeffs":[[0,-1,0,0],[1,0,0,0]]},
                {"type":"polynomial","coeffs":[[0,0,-1,0],[1,0,0,0]]}]}"#,
        ))
        .unwrap();
        let coeffs = f.stem().coefficients().unwrap();
        assert!(coeffs[0].approx_eq(Quaternion::k(), 1e-15));
        assert!(coeffs[2].approx_eq(ONE, 1e-15));
    }

    #[test]
    fn round_trip_evaluation() {
        let f = parse_function_spec(&doc(
            r#"{"type":"polynomial","coeffs":[[0.5,-1,2,0],[1,0,0,3],[0,1,1,1]]}"#,
        ))
        .unwrap();
        let g = parse_function_spec(&emit_function_spec(&f).unwrap()).unwrap();
        for k in 0..50 {
            let t = k as f64 * 0.11;
            let x = Quaternion::new(
                (t * 1.3).sin(),
                1.0 + 0.4 * (t * 0.7).cos(),
                0.3 * t.sin(),
                0.2 * (t + 1.0).cos(),
            );
            if !f.domain().contains(x) {
                continue;
            }
            assert!(f.eval(x).unwrap().approx_eq(g.eval(x).unwrap(), 1e-14));
        }
    }
}
