use super::ast::{Orientation, Piece, Strand, TangleAst};
use super::coupons::CouponRegistry;
use crate::error::Error;

/// Result of type-checking: the boundary after every slice (`levels[0]` is
/// the bottom), plus the connectivity data needed for framings and linking
/// numbers. Boundary points are numbered consecutively level by level.
#[derive(Clone, Debug)]
pub struct Walk {
    pub levels: Vec<Vec<Strand>>,
    offsets: Vec<usize>,
    joins: Vec<(usize, usize)>,
    /// (point on the left input, point on the right input, crossing sign)
    crossings: Vec<(usize, usize, i64)>,
    twists: Vec<(usize, i64)>,
}

impl Walk {
    pub fn point(&self, level: usize, pos: usize) -> usize {
        self.offsets[level] + pos
    }

    pub fn max_width(&self, dim: impl Fn(&Strand) -> usize) -> u128 {
        self.levels.iter().map(|l| l.iter().map(|s| dim(s) as u128).product::<u128>()).max().unwrap_or(1)
    }
}

fn type_err(slice: usize, strand: usize, msg: impl Into<String>) -> Error {
    Error::Type { slice, strand, msg: msg.into() }
}

fn arity(p: &Piece, coupons: &CouponRegistry) -> Result<usize, Error> {
    Ok(match p {
        Piece::Id | Piece::Twist(_) => 1,
        Piece::Cross(_) | Piece::Ev { .. } => 2,
        Piece::Coev { .. } => 0,
        Piece::Coupon(name) => coupons.get(name)?.inputs.len(),
    })
}

fn describe(s: &[Strand]) -> String {
    let parts: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(" "))
}

/// Checks that every piece fits the running boundary and that the final
/// boundary matches `top` when one is declared.
pub fn check(ast: &TangleAst, coupons: &CouponRegistry) -> Result<Walk, Error> {
    let mut levels = vec![ast.bottom.clone()];
    let mut offsets = vec![0];
    let mut joins = Vec::new();
    let mut crossings = Vec::new();
    let mut twists = Vec::new();
    for (k, slice) in ast.slices.iter().enumerate() {
        let sn = k + 1;
        let below = levels.last().unwrap();
        let base_in = *offsets.last().unwrap();
        let base_out = base_in + below.len();
        let mut out: Vec<Strand> = Vec::new();
        let mut pos = 0;
        for p in &slice.pieces {
            let n = arity(p, coupons)?;
            if pos + n > below.len() {
                let msg = match p {
                    Piece::Cross(_) => "braiding needs two strands".to_string(),
                    Piece::Ev { .. } => "evaluation needs two strands".to_string(),
                    Piece::Coupon(name) => format!("coupon {name} needs {n} strands"),
                    _ => format!("{p} needs a strand"),
                };
                return Err(type_err(sn, pos, msg));
            }
            let ins = &below[pos..pos + n];
            let pin = |i: usize| base_in + pos + i;
            let pout = |o: usize, out: &Vec<Strand>| base_out + out.len() + o;
            match p {
                Piece::Id => {
                    joins.push((pin(0), pout(0, &out)));
                    out.push(ins[0].clone());
                }
                Piece::Twist(s) => {
                    joins.push((pin(0), pout(0, &out)));
                    twists.push((pin(0), s.value()));
                    out.push(ins[0].clone());
                }
                Piece::Cross(s) => {
                    crossings.push((pin(0), pin(1), s.value() * ins[0].sign() * ins[1].sign()));
                    joins.push((pin(0), pout(1, &out)));
                    joins.push((pin(1), pout(0, &out)));
                    out.push(ins[1].clone());
                    out.push(ins[0].clone());
                }
                Piece::Ev { prime } => {
                    let (a, b) = (&ins[0], &ins[1]);
                    let want = if *prime { (Orientation::Up, Orientation::Down) } else { (Orientation::Down, Orientation::Up) };
                    if (a.orientation, b.orientation) != want {
                        let what = if *prime { "ev' needs an upward strand followed by a downward one" } else { "ev needs a downward strand followed by an upward one" };
                        return Err(type_err(sn, pos, what));
                    }
                    if a.label != b.label {
                        return Err(type_err(sn, pos, format!("cannot close {} against {}", a.label, b.label)));
                    }
                    if a.color != b.color {
                        return Err(type_err(sn, pos, "cap joins strands of different colors"));
                    }
                    joins.push((pin(0), pin(1)));
                }
                Piece::Coev { prime, label, color } => {
                    let up = Strand { label: label.clone(), orientation: Orientation::Up, color: *color };
                    let down = Strand { orientation: Orientation::Down, ..up.clone() };
                    joins.push((pout(0, &out), pout(1, &out)));
                    if *prime {
                        out.push(down);
                        out.push(up);
                    } else {
                        out.push(up);
                        out.push(down);
                    }
                }
                Piece::Coupon(name) => {
                    let c = coupons.get(name)?;
                    for (i, (s, want)) in ins.iter().zip(&c.inputs).enumerate() {
                        if s.object_name() != *want {
                            return Err(type_err(sn, pos + i, format!("coupon {name} expects {want}, found {}", s.object_name())));
                        }
                        if s.is_red() && !c.accepts_red {
                            return Err(type_err(sn, pos + i, format!("red strand enters blue coupon {name}")));
                        }
                    }
                    let red_in: Vec<usize> = (0..n).filter(|&i| ins[i].is_red()).map(pin).collect();
                    for w in red_in.windows(2) {
                        joins.push((w[0], w[1]));
                    }
                    let red_out: Vec<usize> = (0..c.outputs.len()).filter(|&o| c.outputs[o].is_red()).map(|o| pout(o, &out)).collect();
                    for w in red_out.windows(2) {
                        joins.push((w[0], w[1]));
                    }
                    out.extend(c.outputs.iter().cloned());
                }
            }
            pos += n;
        }
        if pos != below.len() {
            return Err(type_err(sn, pos, format!("slice covers {pos} of {} strands", below.len())));
        }
        offsets.push(base_out);
        levels.push(out);
    }
    if let Some(top) = &ast.top {
        let last = levels.last().unwrap();
        if last != top {
            let i = last.iter().zip(top).take_while(|(a, b)| a == b).count();
            return Err(type_err(
                ast.slices.len(),
                i,
                format!("top boundary mismatch: expected {}, found {}", describe(top), describe(last)),
            ));
        }
    }
    Ok(Walk { levels, offsets, joins, crossings, twists })
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Framings and linking numbers of the red link, one component per leading
/// bottom pair (the plat closure joins each pair).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RedLink {
    pub framings: Vec<i64>,
    pub linking: Vec<Vec<i64>>,
}

/// Validates the n-bottom form and computes the linking matrix of the red
/// link from crossing signs. Blackboard framing is the writhe plus the
/// signed number of twist pieces.
pub fn red_link(ast: &TangleAst, walk: &Walk) -> Result<RedLink, Error> {
    let n = ast.red_pairs;
    for k in 0..n {
        let (a, b) = (&ast.bottom[2 * k], &ast.bottom[2 * k + 1]);
        if a.orientation != Orientation::Down || b.orientation != Orientation::Up || a.label != b.label {
            return Err(Error::Inadmissible(format!("red bottom pair {} must be (Xv, X^)", k + 1)));
        }
    }
    if let Some(i) = ast.bottom.iter().skip(2 * n).position(Strand::is_red) {
        return Err(Error::Inadmissible(format!("red bottom strand {} is not part of a leading pair", 2 * n + i)));
    }
    if walk.levels.last().unwrap().iter().any(Strand::is_red) {
        return Err(Error::Inadmissible("red strands reach the top".into()));
    }
    let total = walk.offsets.last().unwrap() + walk.levels.last().unwrap().len();
    let mut parent: Vec<usize> = (0..total).collect();
    for &(a, b) in &walk.joins {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }
    for k in 0..n {
        let (ra, rb) = (find(&mut parent, 2 * k), find(&mut parent, 2 * k + 1));
        parent[ra] = rb;
    }
    let mut comp_of_root = std::collections::HashMap::new();
    for k in 0..n {
        let r = find(&mut parent, 2 * k);
        if let Some(prev) = comp_of_root.insert(r, k) {
            return Err(Error::Inadmissible(format!("red components {} and {} are the same component cut twice", prev + 1, k + 1)));
        }
    }
    let is_red = |p: usize, walk: &Walk| {
        let level = walk.offsets.partition_point(|&o| o <= p) - 1;
        walk.levels[level][p - walk.offsets[level]].is_red()
    };
    for p in 0..total {
        if is_red(p, walk) {
            let r = find(&mut parent, p);
            if !comp_of_root.contains_key(&r) {
                return Err(Error::Inadmissible("red component not cut to the bottom".into()));
            }
        }
    }
    let mut framings = vec![0i64; n];
    let mut twice = vec![vec![0i64; n]; n];
    for &(p, s) in &walk.twists {
        if let Some(&c) = comp_of_root.get(&find(&mut parent, p)) {
            framings[c] += s;
        }
    }
    for &(a, b, s) in &walk.crossings {
        let ca = comp_of_root.get(&find(&mut parent, a)).copied();
        let cb = comp_of_root.get(&find(&mut parent, b)).copied();
        if let (Some(x), Some(y)) = (ca, cb) {
            if x == y {
                framings[x] += s;
            } else {
                twice[x][y] += s;
                twice[y][x] += s;
            }
        }
    }
    let mut linking = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            linking[i][j] = if i == j {
                framings[i]
            } else if twice[i][j] % 2 == 0 {
                twice[i][j] / 2
            } else {
                return Err(Error::Inadmissible(format!("odd crossing count between red components {} and {}", i + 1, j + 1)));
            };
        }
    }
    Ok(RedLink { framings, linking })
}

#[cfg(test)]
mod tests {
    use super::super::ast::parse_tangle;
    use super::*;

    fn empty() -> CouponRegistry {
        CouponRegistry::new()
    }

    #[test]
    fn closed_loop_checks() {
        let ast = parse_tangle("bottom\nslice coev(P1)\nslice ev'\n").unwrap();
        let w = check(&ast, &empty()).unwrap();
        assert_eq!(w.levels[1], vec![Strand::up("P1"), Strand::down("P1")]);
        assert!(w.levels[2].is_empty());
    }

    #[test]
    fn braiding_needs_two_strands() {
        let ast = parse_tangle("bottom P1^\nslice x+\n").unwrap();
        match check(&ast, &empty()) {
            Err(Error::Type { slice, strand, msg }) => {
                assert_eq!((slice, strand), (1, 0));
                assert_eq!(msg, "braiding needs two strands");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn orientation_and_coverage_errors() {
        let ast = parse_tangle("bottom P1^ P1^\nslice ev\n").unwrap();
        assert!(matches!(check(&ast, &empty()), Err(Error::Type { slice: 1, strand: 0, .. })));
        let ast = parse_tangle("bottom P1^ P1^\nslice id\n").unwrap();
        assert!(matches!(check(&ast, &empty()), Err(Error::Type { slice: 1, strand: 1, .. })));
        let ast = parse_tangle("bottom P1^\nslice id\ntop P1v\n").unwrap();
        assert!(matches!(check(&ast, &empty()), Err(Error::Type { .. })));
        let ast = parse_tangle("bottom P1^\nslice coupon(nope)\n").unwrap();
        assert!(matches!(check(&ast, &empty()), Err(Error::Unknown(_))));
    }

    #[test]
    fn hopf_link_linking_number() {
        // two red unknots clasped by two positive crossings
        let text = "bottom red:Hv red:H^ red:Hv red:H^\n\
                    slice id, x+, id\n\
                    slice id, x+, id\n\
                    slice ev, ev\n";
        let ast = parse_tangle(text).unwrap();
        let w = check(&ast, &empty()).unwrap();
        let link = red_link(&ast, &w).unwrap();
        // strands H^ and Hv cross: each crossing has sign -1
        assert_eq!(link.linking, vec![vec![0, -1], vec![-1, 0]]);
    }

    #[test]
    fn uncut_red_component_rejected() {
        let ast = parse_tangle("bottom\nslice coev(red:H)\nslice ev'\n").unwrap();
        let w = check(&ast, &empty()).unwrap();
        assert!(matches!(red_link(&ast, &w), Err(Error::Inadmissible(_))));
    }
}
