use fmb_core::algebra::{associated_graded, AugmentedAlgebra, Ideal};
use fmb_core::exactmath::{unit_vector, Field, Matrix, Subspace, Vector};
use fmb_core::json::{
    algebra_to_json, augmented_from_json, augmented_to_json, certificate_to_json, group_from_json, lie_from_json,
    lie_to_json, product_table_to_json, vectors_from_json, vectors_to_json,
};
use fmb_core::mbasis::{
    certify_heisenberg_type, check_regular, closure_search_fmb, generator_set_count, kernel_regular_basis,
    obstruction_probe_with, quotient_basis, reverify, transport_fmb_to_gr, verify_fmb, BasisCandidate,
    HeisenbergWitness, SearchConfig, SearchOutcome,
};
use fmb_core::pgroup::{corollary2_report, group_algebra, is_powerful, jennings_lie, quillen_check, GroupTable};
use fmb_core::rlie::{
    cyclic_decomposition, decompose_into_cyclics, dimension_subalgebras, nilpotency_class, RestrictedLiePresentation,
};
use fmb_core::uenv::{
    build_uenv_adapted, compare_graded_envelopes, family_fmb, make_family, omega_power_basis, pbw_algebra,
    word_image_basis,
};
use serde_json::{json, Value};

use crate::builtins;
use crate::io::{field, invalid, read_json, to_value, usize_field, CliResult, Outcome};
use crate::{FamilyArgs, FmbCommand, GroupCommand, InputArgs, LieCommand, Target};

type Run = (String, Value, Outcome);

#[derive(Clone, Copy)]
enum Kind {
    Algebra,
    Lie,
    Group,
}

fn load(args: &InputArgs, kind: Kind) -> CliResult<Value> {
    match &args.builtin {
        None => read_json(args.input.as_deref()),
        Some(name) => {
            let found = match kind {
                Kind::Algebra => builtins::algebra(name)?,
                Kind::Lie => builtins::lie_json(name)?,
                Kind::Group => builtins::group_json(name),
            };
            found.ok_or_else(|| {
                let known = match kind {
                    Kind::Algebra => "x<N>, free2-<N>, u:<lie>, FG:<group>".to_string(),
                    Kind::Lie => builtins::LIE_NAMES.join(", "),
                    Kind::Group => fmb_core::pgroup::catalog::NAMES.join(", "),
                };
                invalid(format!("unknown builtin '{name}' (known: {known})"))
            })
        }
    }
}

fn standard_basis(a: &AugmentedAlgebra) -> BasisCandidate {
    let n = a.dim();
    BasisCandidate::new((0..n).map(|i| unit_vector(a.field(), n, i)).collect())
}

/// `{"algebra": ..., "basis": [...], "unit_required": bool}` or a bare algebra
/// with its standard basis.
fn algebra_and_basis(v: &Value) -> CliResult<(AugmentedAlgebra, BasisCandidate)> {
    let Some(alg) = v.get("algebra") else {
        let a = augmented_from_json(v)?;
        let b = standard_basis(&a);
        return Ok((a, b));
    };
    let a = augmented_from_json(alg)?;
    let mut b = match v.get("basis") {
        Some(b) => BasisCandidate::new(vectors_from_json(a.field(), a.dim(), b)?),
        None => standard_basis(&a),
    };
    if let Some(u) = v.get("unit_required") {
        b.unit_required = u.as_bool().ok_or_else(|| invalid("'unit_required' must be a boolean"))?;
    }
    Ok((a, b))
}

/// `{"lie": ...}` with extra keys, or a bare Lie algebra.
fn lie_of(v: &Value) -> CliResult<RestrictedLiePresentation> {
    Ok(lie_from_json(v.get("lie").unwrap_or(v))?)
}

fn failure(msg: impl std::fmt::Display) -> Value {
    json!({ "failure": msg.to_string() })
}

pub fn fmb(c: &FmbCommand) -> CliResult<Run> {
    Ok(match c {
        FmbCommand::Verify(args) => {
            let v = load(args, Kind::Algebra)?;
            let (a, b) = algebra_and_basis(&v)?;
            let out = match verify_fmb(&a, &b)? {
                Ok(cert) => Outcome::pass(json!({ "labels": a.labels(), "certificate": certificate_to_json(&cert) })),
                Err(e) => Outcome::new(false, failure(e)),
            };
            ("fmb verify".into(), v, out)
        }
        FmbCommand::Search { input, budget, seed } => {
            let v = load(input, Kind::Algebra)?;
            let a = augmented_from_json(v.get("algebra").unwrap_or(&v))?;
            let outcome = closure_search_fmb(&a, SearchConfig { budget: *budget, seed: *seed })?;
            let layers = a.filtration().layer_dims();
            let count = generator_set_count(
                a.field().p() as u32,
                layers.get(1).copied().unwrap_or(0),
                a.filtration().power(2).dim(),
            );
            let mut result = json!({
                "status": outcome.status(),
                "evaluated": outcome.evaluated(),
                "generator_sets": count.map(|c| c.to_string()),
                "budget": budget,
                "seed": seed,
            });
            if let SearchOutcome::Found { certificate, generators, mode, .. } = &outcome {
                result["mode"] = to_value(mode);
                result["generators"] = vectors_to_json(generators);
                result["certificate"] = certificate_to_json(certificate);
            }
            let found = matches!(outcome, SearchOutcome::Found { .. });
            ("fmb search".into(), json!({ "input": v, "budget": budget, "seed": seed }), Outcome::new(found, result))
        }
        FmbCommand::Quotient(args) => {
            let v = read_json(args.input.as_deref())?;
            let (a, b) = algebra_and_basis(&v)?;
            let gens = vectors_from_json(a.field(), a.dim(), field(&v, "ideal")?)?;
            let ideal = Ideal::generated_by(a.algebra(), &gens)?;
            let out = match quotient_basis(a.algebra(), &b, &ideal)? {
                Err(nr) => Outcome::new(false, json!({ "not_regular": { "witness": vectors_to_json(&[nr.witness]) } })),
                Ok(q) => {
                    let d = &q.decomposition;
                    let next: Vec<[usize; 2]> = d.next.iter().map(|(&i, &j)| [i, j]).collect();
                    Outcome::pass(json!({
                        "ideal_dim": ideal.dim(),
                        "i0": d.i0, "i1": d.i1, "next": next, "i2": d.i2, "rays": d.rays, "i3": d.i3,
                        "k1": vectors_to_json(&d.k1),
                        "quotient": algebra_to_json(&q.quotient, None),
                        "basis": vectors_to_json(&q.basis.vectors),
                        "table": product_table_to_json(&q.table),
                    }))
                }
            };
            ("fmb quotient".into(), v, out)
        }
        FmbCommand::RegularKernel(args) => {
            let v = read_json(args.input.as_deref())?;
            let a = augmented_from_json(field(&v, "source")?)?;
            let bs = match v.get("basis") {
                Some(b) => BasisCandidate::new(vectors_from_json(a.field(), a.dim(), b)?),
                None => standard_basis(&a),
            };
            let target = augmented_from_json(field(&v, "target")?)?;
            let rows = vectors_from_json(a.field(), target.dim(), field(&v, "map")?)?;
            let psi = Matrix::from_rows(a.field(), target.dim(), rows)?;
            let selected: Vec<usize> = serde_json::from_value(field(&v, "selected")?.clone())
                .map_err(|e| invalid(format!("'selected': {e}")))?;
            let z = kernel_regular_basis(a.algebra(), &bs, &psi, target.algebra(), &selected)?;
            let regularity = check_regular(&bs, &z)?;
            let out = Outcome::pass(json!({ "kernel_basis": vectors_to_json(&z), "regularity": to_value(&regularity) }));
            ("fmb regular-kernel".into(), v, out)
        }
        FmbCommand::GrTransport(args) => {
            let v = load(args, Kind::Algebra)?;
            let (a, b) = algebra_and_basis(&v)?;
            let out = match verify_fmb(&a, &b)? {
                Err(e) => Outcome::new(false, failure(format!("input basis is not an f.m.b.: {e}"))),
                Ok(cert) => {
                    let gr = associated_graded(&a)?;
                    let g = transport_fmb_to_gr(&a, &cert, &gr)?;
                    let ok = reverify(gr.algebra(), &g).is_ok();
                    Outcome::new(
                        ok,
                        json!({
                            "graded_algebra": augmented_to_json(gr.algebra()),
                            "certificate": certificate_to_json(&g),
                            "reverified": ok,
                        }),
                    )
                }
            };
            ("fmb gr-transport".into(), v, out)
        }
        FmbCommand::Probe(args) => {
            let v = load(args, Kind::Lie)?;
            let l = lie_of(&v)?;
            let (chain, u) = build_uenv_adapted(&l)?;
            let reps: Vec<Vector> = match v.get("reps") {
                Some(r) => vectors_from_json(l.field(), l.dim(), r)?,
                None => {
                    // the first basis vectors independent modulo D_2
                    let mut span = chain.d(2);
                    (0..l.dim()).map(|k| l.basis_vector(k)).filter(|e| span.insert(e.clone())).take(3).collect()
                }
            };
            let reps: [Vector; 3] = reps.try_into().map_err(|_| invalid("exactly three representatives are needed"))?;
            let r = obstruction_probe_with(&l, &chain, &u, &reps)?;
            let consistent = r.facts.iter().all(|f| f.consistent || f.hypothesis.is_none());
            let out = Outcome::pass(json!({ "reps": vectors_to_json(&reps), "report": to_value(&r), "facts_ab_consistent": consistent }));
            ("fmb probe".into(), v, out)
        }
        FmbCommand::CertifyHeisenberg(args) => {
            let v = read_json(args.input.as_deref())?;
            let a = augmented_from_json(field(&v, "algebra")?)?;
            let (m, n, s) = (usize_field(&v, "m")?, usize_field(&v, "n")?, usize_field(&v, "s")?);
            let ul = pbw_algebra(&make_family(m, n, s, 2)?)?;
            let (f, dim) = (ul.algebra().field(), ul.dim());
            let basis = BasisCandidate::new(vectors_from_json(f, dim, field(&v, "basis")?)?);
            let ideal = Subspace::from_vectors(f, dim, vectors_from_json(f, dim, field(&v, "ideal")?)?);
            let iso_rows = vectors_from_json(f, a.dim(), field(&v, "iso")?)?;
            let iso = Matrix::from_rows(f, a.dim(), iso_rows)?;
            let w = HeisenbergWitness { m, n, s, basis, ideal, iso };
            let r = certify_heisenberg_type(a.algebra(), &w)?;
            ("fmb certify-heisenberg".into(), v, Outcome::new(r.certified, to_value(&r)))
        }
    })
}

fn family_input(f: &FamilyArgs) -> Value {
    json!({ "m": f.m, "n": f.n, "s": f.s, "p": f.p })
}

pub fn lie(c: &LieCommand) -> CliResult<Run> {
    Ok(match c {
        LieCommand::Env(args) => {
            let v = load(args, Kind::Lie)?;
            let l = lie_of(&v)?;
            let u = pbw_algebra(&l)?;
            let expected = (l.p() as usize).pow(l.dim() as u32);
            let out = Outcome::new(
                u.dim() == expected,
                json!({ "dim": u.dim(), "expected_dim": expected, "algebra": augmented_to_json(u.algebra()) }),
            );
            ("lie env".into(), v, out)
        }
        LieCommand::Omega(args) => {
            let v = load(args, Kind::Lie)?;
            let l = lie_of(&v)?;
            let (_, u) = build_uenv_adapted(&l)?;
            let filt = u.algebra().filtration();
            let top = filt.nilpotency_index();
            let mut omega_dims = Vec::new();
            let mut agree = true;
            for n in 0..=top {
                let w = omega_power_basis(&u, n)?;
                agree &= w == filt.power(n);
                omega_dims.push(w.dim());
            }
            let out = Outcome::new(
                agree,
                json!({ "omega_dims": omega_dims, "radical_dims": filt.dims(), "layer_dims": filt.layer_dims(), "agree": agree }),
            );
            ("lie omega".into(), v, out)
        }
        LieCommand::Family(f) => {
            let l = make_family(f.m, f.n, f.s, f.p)?;
            ("lie family".into(), family_input(f), Outcome::pass(lie_to_json(&l)))
        }
        LieCommand::FamilyFmb(f) => {
            let r = family_fmb(f.m, f.n, f.s)?;
            let u = pbw_algebra(&make_family(f.m, f.n, f.s, 2)?)?;
            let ok = reverify(u.algebra(), &r.certificate).is_ok();
            let mut result = to_value(&r);
            result["certificate"] = certificate_to_json(&r.certificate);
            result["reverified"] = json!(ok);
            ("lie family-fmb".into(), family_input(f), Outcome::new(ok, result))
        }
        LieCommand::WordBasis(args) => {
            let v = load(args, Kind::Lie)?;
            let l = lie_of(&v)?;
            let u = pbw_algebra(&l)?;
            let gens: Vec<Vector> = match v.get("generators") {
                Some(g) => vectors_from_json(l.field(), l.dim(), g)?,
                None => {
                    let chain = dimension_subalgebras(&l)?;
                    (0..l.dim()).map(|k| l.basis_vector(k)).filter(|e| chain.height(e) == Some(1)).collect()
                }
            };
            let embedded: Vec<Vector> = gens.iter().map(|g| u.embed(g)).collect();
            let names: Vec<String> = (0..gens.len()).map(|i| format!("g{}", i + 1)).collect();
            let names: Vec<&str> = names.iter().map(String::as_str).collect();
            let out = match word_image_basis(u.algebra(), &embedded)? {
                Err(e) => Outcome::new(false, failure(e)),
                Ok(wb) => {
                    let fmb = verify_fmb(u.algebra(), &wb.candidate)?;
                    Outcome::new(
                        fmb.is_ok(),
                        json!({
                            "generators": vectors_to_json(&gens),
                            "words": wb.word_labels(&names),
                            "basis": vectors_to_json(&wb.candidate.vectors),
                            "is_fmb": fmb.is_ok(),
                            "layer_counts": fmb.ok().map(|c| c.layer_counts),
                        }),
                    )
                }
            };
            ("lie word-basis".into(), v, out)
        }
        LieCommand::Dimsub(args) => {
            let v = load(args, Kind::Lie)?;
            let l = lie_of(&v)?;
            let chain = dimension_subalgebras(&l)?;
            let out = Outcome::pass(json!({
                "dims": chain.dims(),
                "heights": chain.heights(),
                "adapted_basis": vectors_to_json(chain.adapted_basis()),
                "class": nilpotency_class(&l),
            }));
            ("lie dimsub".into(), v, out)
        }
        LieCommand::Grlie(args) => {
            let v = load(args, Kind::Lie)?;
            let l = lie_of(&v)?;
            let (gr, r) = compare_graded_envelopes(&l)?;
            let out = Outcome::new(r.isomorphic, json!({ "graded_lie": lie_to_json(&gr), "comparison": to_value(&r) }));
            ("lie grlie".into(), v, out)
        }
        LieCommand::Decompose(args) => {
            let v = load(args, Kind::Lie)?;
            let l = lie_of(&v)?;
            let d = decompose_into_cyclics(&l)?;
            let mut result = to_value(&d);
            if l.field().is_prime_field() {
                result["exponents"] = json!(cyclic_decomposition(&l)?.exponents);
            }
            ("lie decompose".into(), v, Outcome::pass(result))
        }
    })
}

fn group_field(g: &GroupTable) -> CliResult<Field> {
    Ok(Field::prime(g.p() as u32)?)
}

pub fn group(c: &GroupCommand) -> CliResult<Run> {
    Ok(match c {
        GroupCommand::Jennings(args) => {
            let v = load(args, Kind::Group)?;
            let g = group_from_json(&v)?;
            let j = jennings_lie(&g)?;
            let layers: Vec<Value> = j
                .layers
                .iter()
                .map(|l| {
                    let t: Vec<&String> = l.transversal.iter().map(|&x| &g.labels()[x]).collect();
                    json!({ "index": l.index, "transversal": t })
                })
                .collect();
            let out = Outcome::pass(json!({
                "chain_orders": j.chain.iter().map(Vec::len).collect::<Vec<_>>(),
                "layers": layers,
                "lie": lie_to_json(&j.lie),
                "lie_class": nilpotency_class(&j.lie),
            }));
            ("group jennings".into(), v, out)
        }
        GroupCommand::Quillen(args) => {
            let v = load(args, Kind::Group)?;
            let g = group_from_json(&v)?;
            let r = quillen_check(&g, group_field(&g)?)?;
            ("group quillen".into(), v, Outcome::new(r.isomorphic, to_value(&r)))
        }
        GroupCommand::Powerful(args) => {
            let v = load(args, Kind::Group)?;
            let g = group_from_json(&v)?;
            ("group powerful".into(), v, Outcome::pass(json!({ "powerful": is_powerful(&g) })))
        }
        GroupCommand::Corollary2 { input, budget } => {
            let v = load(input, Kind::Group)?;
            let g = group_from_json(&v)?;
            let r = corollary2_report(&g, group_field(&g)?, *budget)?;
            ("group corollary2".into(), json!({ "input": v, "budget": budget }), Outcome::pass(to_value(&r)))
        }
    })
}

pub fn convert(args: &InputArgs, to: Target) -> CliResult<Run> {
    let v = match &args.builtin {
        None => read_json(args.input.as_deref())?,
        Some(name) => builtins::group_json(name)
            .or(builtins::lie_json(name)?)
            .or(builtins::algebra(name)?)
            .ok_or_else(|| invalid(format!("unknown builtin '{name}'")))?,
    };
    let result = if v.get("table").is_some() {
        let g = group_from_json(&v)?;
        match to {
            Target::Algebra => augmented_to_json(&group_algebra(&g, group_field(&g)?)?),
            Target::Lie => lie_to_json(&jennings_lie(&g)?.lie),
        }
    } else if v.get("mult").is_some() {
        match to {
            Target::Algebra => augmented_to_json(&augmented_from_json(&v)?),
            Target::Lie => return Err(invalid("an algebra cannot be converted to a Lie algebra")),
        }
    } else if v.get("dim").is_some() {
        let l = lie_from_json(&v)?;
        match to {
            Target::Algebra => augmented_to_json(pbw_algebra(&l)?.algebra()),
            Target::Lie => lie_to_json(&l),
        }
    } else {
        return Err(invalid("input is neither a group, a Lie algebra nor an algebra"));
    };
    Ok(("convert".into(), v, Outcome::pass(result)))
}
