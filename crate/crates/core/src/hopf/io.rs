//! Line-based exact text format for structure tensors.
//!
//! ```text
//! HOPF name
//! FIELD r
//! DIM d
//! LABEL i text
//! GENERATORS i j ...
//! BEGIN mult 3
//! TENSOR i j k VALUE
//! END
//! ```
//!
//! Each `BEGIN` block carries one tensor and its arity. Matrices list the input
//! index first. Elements of H⊗H list the two factor indices. Lines starting
//! with `#` are comments.

use super::HopfData;
use crate::cyclo::matrix::{canonicalize, SparseVec};
use crate::cyclo::{field_init, parse_cyclo, CycloNum, ExactMatrix};
use crate::error::Error;
use std::collections::HashMap;
use std::fmt::Write;

fn block(out: &mut String, name: &str, arity: usize, entries: impl Iterator<Item = (Vec<usize>, CycloNum)>) {
    let _ = writeln!(out, "BEGIN {name} {arity}");
    for (idx, v) in entries {
        let idx: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
        let _ = writeln!(out, "TENSOR {} {v}", idx.join(" "));
    }
    let _ = writeln!(out, "END");
}

fn vec_entries(v: &SparseVec) -> impl Iterator<Item = (Vec<usize>, CycloNum)> + '_ {
    v.iter().map(|(i, c)| (vec![*i], c.clone()))
}

fn pair_entries(h: &HopfData, v: &SparseVec) -> Vec<(Vec<usize>, CycloNum)> {
    h.split2(v).map(|(a, b, c)| (vec![a, b], c.clone())).collect()
}

pub fn dump_hopf(h: &HopfData) -> String {
    let d = h.dim;
    let mut out = String::new();
    let _ = writeln!(out, "HOPF {}", h.name);
    let _ = writeln!(out, "FIELD {}", h.ctx.r());
    let _ = writeln!(out, "DIM {d}");
    for (i, l) in h.basis_labels.iter().enumerate() {
        let _ = writeln!(out, "LABEL {i} {l}");
    }
    let gens: Vec<String> = h.generators.iter().map(|g| g.to_string()).collect();
    let _ = writeln!(out, "GENERATORS {}", gens.join(" "));
    block(&mut out, "mult", 3, h.mult.entries().map(|(i, k, v)| (vec![i / d, i % d, k], v.clone())));
    block(&mut out, "unit", 1, vec_entries(&h.unit));
    block(&mut out, "comult", 3, h.comult.entries().map(|(i, k, v)| (vec![i, k / d, k % d], v.clone())));
    block(&mut out, "counit", 1, vec_entries(&h.counit));
    block(&mut out, "antipode", 2, h.antipode.entries().map(|(i, j, v)| (vec![i, j], v.clone())));
    block(&mut out, "antipode_inv", 2, h.antipode_inv.entries().map(|(i, j, v)| (vec![i, j], v.clone())));
    block(&mut out, "r_matrix", 2, pair_entries(h, &h.r_matrix).into_iter());
    block(&mut out, "r_matrix_inv", 2, pair_entries(h, &h.r_matrix_inv).into_iter());
    block(&mut out, "ribbon_v", 1, vec_entries(&h.ribbon_v));
    block(&mut out, "ribbon_v_inv", 1, vec_entries(&h.ribbon_v_inv));
    block(&mut out, "pivotal_g", 1, vec_entries(&h.pivotal_g));
    block(&mut out, "integral_lambda", 1, vec_entries(&h.integral_lambda));
    block(&mut out, "cointegral", 1, vec_entries(&h.cointegral));
    out
}

const BLOCKS: [(&str, usize); 13] = [
    ("mult", 3),
    ("unit", 1),
    ("comult", 3),
    ("counit", 1),
    ("antipode", 2),
    ("antipode_inv", 2),
    ("r_matrix", 2),
    ("r_matrix_inv", 2),
    ("ribbon_v", 1),
    ("ribbon_v_inv", 1),
    ("pivotal_g", 1),
    ("integral_lambda", 1),
    ("cointegral", 1),
];

pub fn load_hopf(text: &str) -> Result<HopfData, Error> {
    let perr = |line: usize, msg: String| Error::Parse { line, col: 1, msg };
    let mut name = String::from("loaded");
    let mut ctx = None;
    let mut dim = None;
    let mut labels: HashMap<usize, String> = HashMap::new();
    let mut generators = None;
    let mut blocks: HashMap<String, Vec<(Vec<usize>, CycloNum)>> = HashMap::new();
    let mut current: Option<(String, usize)> = None;
    for (n, raw) in text.lines().enumerate() {
        let ln = n + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (head, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match head {
            "HOPF" => name = rest.to_string(),
            "FIELD" => {
                let r: u32 = rest.parse().map_err(|_| perr(ln, format!("bad field order {rest:?}")))?;
                ctx = Some(field_init(r)?);
            }
            "DIM" => dim = Some(rest.parse::<usize>().map_err(|_| perr(ln, format!("bad dimension {rest:?}")))?),
            "LABEL" => {
                let (i, l) = rest.split_once(char::is_whitespace).ok_or_else(|| perr(ln, "LABEL needs index and text".into()))?;
                let i = i.parse().map_err(|_| perr(ln, format!("bad index {i:?}")))?;
                labels.insert(i, l.trim().to_string());
            }
            "GENERATORS" => {
                let g: Result<Vec<usize>, _> = rest.split_whitespace().map(str::parse).collect();
                generators = Some(g.map_err(|_| perr(ln, "bad generator list".into()))?);
            }
            "BEGIN" => {
                if current.is_some() {
                    return Err(perr(ln, "nested BEGIN".into()));
                }
                let mut it = rest.split_whitespace();
                let bname = it.next().ok_or_else(|| perr(ln, "BEGIN needs a name".into()))?;
                let arity: usize = it.next().and_then(|a| a.parse().ok()).ok_or_else(|| perr(ln, "BEGIN needs an arity".into()))?;
                match BLOCKS.iter().find(|(b, _)| *b == bname) {
                    Some((_, a)) if *a == arity => {}
                    Some((_, a)) => return Err(perr(ln, format!("{bname} has arity {a}, not {arity}"))),
                    None => return Err(perr(ln, format!("unknown tensor {bname}"))),
                }
                blocks.insert(bname.to_string(), Vec::new());
                current = Some((bname.to_string(), arity));
            }
            "END" => {
                current.take().ok_or_else(|| perr(ln, "END without BEGIN".into()))?;
            }
            "TENSOR" => {
                let (bname, arity) = current.clone().ok_or_else(|| perr(ln, "TENSOR outside a block".into()))?;
                let c = ctx.ok_or_else(|| perr(ln, "FIELD must precede tensors".into()))?;
                let d = dim.ok_or_else(|| perr(ln, "DIM must precede tensors".into()))?;
                let mut parts = rest.splitn(arity + 1, char::is_whitespace);
                let mut idx = Vec::with_capacity(arity);
                for _ in 0..arity {
                    let p = parts.next().unwrap_or("");
                    let i: usize = p.parse().map_err(|_| perr(ln, format!("bad index {p:?}")))?;
                    if i >= d {
                        return Err(perr(ln, format!("index {i} out of range")));
                    }
                    idx.push(i);
                }
                let v = parse_cyclo(c, parts.next().unwrap_or("").trim()).map_err(|e| perr(ln, e.to_string()))?;
                blocks.get_mut(&bname).expect("block opened").push((idx, v));
            }
            other => return Err(perr(ln, format!("unknown directive {other}"))),
        }
    }
    if current.is_some() {
        return Err(perr(text.lines().count(), "unterminated block".into()));
    }
    let ctx = ctx.ok_or_else(|| perr(0, "missing FIELD".into()))?;
    let d = dim.ok_or_else(|| perr(0, "missing DIM".into()))?;
    let mut take = |b: &str| blocks.remove(b).ok_or_else(|| perr(0, format!("missing tensor {b}")));
    let vector = |e: Vec<(Vec<usize>, CycloNum)>| -> SparseVec { canonicalize(e.into_iter().map(|(i, v)| (i[0], v)).collect()) };
    let pairs = |e: Vec<(Vec<usize>, CycloNum)>| -> SparseVec { canonicalize(e.into_iter().map(|(i, v)| (i[0] * d + i[1], v)).collect()) };
    let matrix = |e: Vec<(Vec<usize>, CycloNum)>| ExactMatrix::from_triplets(ctx, d, d, e.into_iter().map(|(i, v)| (i[0], i[1], v)));
    let mult = ExactMatrix::from_triplets(ctx, d * d, d, take("mult")?.into_iter().map(|(i, v)| (i[0] * d + i[1], i[2], v)));
    let comult = ExactMatrix::from_triplets(ctx, d, d * d, take("comult")?.into_iter().map(|(i, v)| (i[0], i[1] * d + i[2], v)));
    Ok(HopfData {
        ctx,
        name,
        dim: d,
        basis_labels: (0..d).map(|i| labels.get(&i).cloned().unwrap_or_else(|| format!("e{i}"))).collect(),
        mult,
        unit: vector(take("unit")?),
        comult,
        counit: vector(take("counit")?),
        antipode: matrix(take("antipode")?),
        antipode_inv: matrix(take("antipode_inv")?),
        r_matrix: pairs(take("r_matrix")?),
        r_matrix_inv: pairs(take("r_matrix_inv")?),
        ribbon_v: vector(take("ribbon_v")?),
        ribbon_v_inv: vector(take("ribbon_v_inv")?),
        pivotal_g: vector(take("pivotal_g")?),
        integral_lambda: vector(take("integral_lambda")?),
        cointegral: vector(take("cointegral")?),
        generators: generators.unwrap_or_else(|| (0..d).collect()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::small_qsl2;

    #[test]
    fn round_trip() {
        let h = small_qsl2(3).unwrap();
        let text = dump_hopf(&h);
        assert!(text.lines().any(|l| l.starts_with("TENSOR ")));
        let back = load_hopf(&text).unwrap();
        assert_eq!(back.mult, h.mult);
        assert_eq!(back.comult, h.comult);
        assert_eq!(back.r_matrix, h.r_matrix);
        assert_eq!(back.ribbon_v, h.ribbon_v);
        assert_eq!(back.basis_labels, h.basis_labels);
        assert_eq!(dump_hopf(&back), text);
    }

    #[test]
    fn malformed_input() {
        assert!(matches!(load_hopf("FIELD 3\nDIM 2\nTENSOR 0 1"), Err(Error::Parse { .. })));
        assert!(matches!(load_hopf("FIELD 3\nDIM 2\nBEGIN mult 2\n"), Err(Error::Parse { .. })));
        assert!(matches!(load_hopf("FIELD 3\nDIM 2\n"), Err(Error::Parse { .. })));
    }
}
