//! Equivariant chain complexes: one basis cell per orbit, boundary
//! matrices over ℤΓ.
//!
//! The built-ins are the standard one-vertex CW structures of small
//! aspherical spaces, with boundary matrices obtained from the Fox
//! derivatives of their presentations. Every complex is validated at
//! load: ∂_j ∘ ∂_{j+1} = 0 exactly and the alternating orbit count
//! equals the stored Euler characteristic.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::LabError;
use crate::group::{GroupElement, GroupFamily, GroupSpec, Letter};
use crate::ring::{GroupRingElement, RingMatrix};

/// A finite free Γ-CW chain complex.
#[derive(Debug, Clone)]
pub struct EquivariantChainComplex {
    pub spec: GroupSpec,
    pub name: String,
    /// Number of j-cell orbits, j = 0..=dim.
    pub orbit_counts: Vec<usize>,
    /// boundaries[j-1] is ∂_j with shape n_{j-1} × n_j.
    pub boundaries: Vec<RingMatrix>,
    /// Euler characteristic of the base space.
    pub euler_char: i64,
}

/// Validation outcome; failures carry the first offending entry.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub passed: bool,
    pub messages: Vec<String>,
    /// (j, row, col): first nonzero entry of ∂_j ∘ ∂_{j+1}.
    pub first_failure: Option<(usize, usize, usize)>,
}

impl ValidationReport {
    fn pass() -> Self {
        ValidationReport {
            passed: true,
            messages: vec!["ok".into()],
            first_failure: None,
        }
    }
}

impl EquivariantChainComplex {
    pub fn dim(&self) -> usize {
        self.orbit_counts.len() - 1
    }

    /// ∂_j for 1 <= j <= dim.
    pub fn boundary(&self, j: usize) -> &RingMatrix {
        &self.boundaries[j - 1]
    }

    /// Checks shapes, ∂∘∂ = 0 over ℤΓ, and the Euler characteristic.
    pub fn validate(&self) -> ValidationReport {
        let mut messages = Vec::new();
        let dim = self.dim();
        for j in 1..=dim {
            let b = self.boundary(j);
            if b.nrows != self.orbit_counts[j - 1] || b.ncols != self.orbit_counts[j] {
                return ValidationReport {
                    passed: false,
                    messages: vec![format!(
                        "boundary {} has shape {}x{}, expected {}x{}",
                        j,
                        b.nrows,
                        b.ncols,
                        self.orbit_counts[j - 1],
                        self.orbit_counts[j]
                    )],
                    first_failure: None,
                };
            }
        }
        for j in 1..dim {
            let prod = match self
                .boundary(j)
                .boundary_product(self.boundary(j + 1), &self.spec)
            {
                Ok(p) => p,
                Err(e) => {
                    return ValidationReport {
                        passed: false,
                        messages: vec![format!("boundary entries invalid: {e}")],
                        first_failure: None,
                    }
                }
            };
            for r in 0..prod.nrows {
                for c in 0..prod.ncols {
                    if !prod.get(r, c).is_zero() {
                        messages.push(format!(
                            "d{j} d{} != 0 at ({r}, {c}): {}",
                            j + 1,
                            prod.get(r, c)
                        ));
                        return ValidationReport {
                            passed: false,
                            messages,
                            first_failure: Some((j, r, c)),
                        };
                    }
                }
            }
        }
        let chi: i64 = self
            .orbit_counts
            .iter()
            .enumerate()
            .map(|(j, &n)| if j % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum();
        if chi != self.euler_char {
            return ValidationReport {
                passed: false,
                messages: vec![format!(
                    "alternating orbit count {chi} != stored Euler characteristic {}",
                    self.euler_char
                )],
                first_failure: None,
            };
        }
        ValidationReport::pass()
    }
}

/// Names accepted by [`builtin_complex`].
pub fn builtin_names() -> Vec<&'static str> {
    vec![
        "circle_Z",
        "torus2_Z2",
        "torus3_Z3",
        "surface_genus2_Z4",
        "wedge2_F2",
        "heisenberg_manifold",
    ]
}

/// Builds a standard complex by name. Surfaces accept any genus as
/// `surface_genus<g>_Z<2g>`.
pub fn builtin_complex(name: &str) -> Result<EquivariantChainComplex, LabError> {
    let complex = match name {
        "circle_Z" => circle(),
        "torus2_Z2" => torus2(),
        "torus3_Z3" => torus3(),
        "wedge2_F2" => wedge2(),
        "heisenberg_manifold" => heisenberg_manifold(),
        other => {
            if let Some(g) = parse_surface_name(other) {
                surface(g)?
            } else {
                return Err(LabError::UnknownComplex(other.to_string()));
            }
        }
    };
    let report = complex.validate();
    if !report.passed {
        return Err(LabError::Validation(report.messages.join("; ")));
    }
    Ok(complex)
}

fn parse_surface_name(name: &str) -> Option<u32> {
    let rest = name.strip_prefix("surface_genus")?;
    let (g_str, z_str) = rest.split_once("_Z")?;
    let g: u32 = g_str.parse().ok()?;
    let z: u32 = z_str.parse().ok()?;
    (g >= 1 && z == 2 * g).then_some(g)
}

fn abelian_gen(d: usize, i: usize) -> GroupElement {
    let mut v = vec![0i64; d];
    v[i] = 1;
    GroupElement::Abelian(v)
}

fn circle() -> EquivariantChainComplex {
    let spec = GroupSpec::free_abelian(1);
    let t = abelian_gen(1, 0);
    let d1 = RingMatrix::from_rows(vec![vec![GroupRingElement::gen_minus_one(&spec, t)]]);
    EquivariantChainComplex {
        spec,
        name: "circle_Z".into(),
        orbit_counts: vec![1, 1],
        boundaries: vec![d1],
        euler_char: 0,
    }
}

fn torus2() -> EquivariantChainComplex {
    let spec = GroupSpec::free_abelian(2);
    let a = abelian_gen(2, 0);
    let b = abelian_gen(2, 1);
    let d1 = RingMatrix::from_rows(vec![vec![
        GroupRingElement::gen_minus_one(&spec, a.clone()),
        GroupRingElement::gen_minus_one(&spec, b.clone()),
    ]]);
    // Fox derivatives of the relator [a, b]: d/da = 1 - b, d/db = a - 1.
    let one_minus_b = GroupRingElement::gen_minus_one(&spec, b).neg();
    let a_minus_1 = GroupRingElement::gen_minus_one(&spec, a);
    let d2 = RingMatrix::from_rows(vec![vec![one_minus_b], vec![a_minus_1]]);
    EquivariantChainComplex {
        spec,
        name: "torus2_Z2".into(),
        orbit_counts: vec![1, 2, 1],
        boundaries: vec![d1, d2],
        euler_char: 0,
    }
}

fn torus3() -> EquivariantChainComplex {
    let spec = GroupSpec::free_abelian(3);
    let g = |i: usize| abelian_gen(3, i);
    let minus1 = |i: usize| GroupRingElement::gen_minus_one(&spec, g(i));
    let one_minus = |i: usize| GroupRingElement::gen_minus_one(&spec, g(i)).neg();
    let d1 = RingMatrix::from_rows(vec![vec![minus1(0), minus1(1), minus1(2)]]);
    // Relators [a,b], [a,c], [b,c]; Koszul pattern.
    let d2 = RingMatrix::from_rows(vec![
        vec![one_minus(1), one_minus(2), GroupRingElement::zero()],
        vec![minus1(0), GroupRingElement::zero(), one_minus(2)],
        vec![GroupRingElement::zero(), minus1(0), minus1(1)],
    ]);
    let d3 = RingMatrix::from_rows(vec![vec![minus1(2)], vec![one_minus(1)], vec![minus1(0)]]);
    EquivariantChainComplex {
        spec,
        name: "torus3_Z3".into(),
        orbit_counts: vec![1, 3, 3, 1],
        boundaries: vec![d1, d2, d3],
        euler_char: 0,
    }
}

fn surface(genus: u32) -> Result<EquivariantChainComplex, LabError> {
    if genus == 0 {
        return Err(LabError::Domain("surface genus must be >= 1".into()));
    }
    let d = 2 * genus as usize;
    let spec = GroupSpec::free_abelian(d);
    let mut d1_row = Vec::with_capacity(d);
    let mut d2_col = Vec::with_capacity(d);
    for i in 0..genus as usize {
        let a_i = abelian_gen(d, 2 * i);
        let b_i = abelian_gen(d, 2 * i + 1);
        d1_row.push(GroupRingElement::gen_minus_one(&spec, a_i.clone()));
        d1_row.push(GroupRingElement::gen_minus_one(&spec, b_i.clone()));
        // Relator Π_i [a_i, b_i]; in the homology cover the commutator
        // prefixes die, leaving d/da_i = 1 - b_i, d/db_i = a_i - 1.
        d2_col.push(GroupRingElement::gen_minus_one(&spec, b_i).neg());
        d2_col.push(GroupRingElement::gen_minus_one(&spec, a_i));
    }
    let d1 = RingMatrix::from_rows(vec![d1_row]);
    let d2 = RingMatrix::from_rows(d2_col.into_iter().map(|e| vec![e]).collect());
    Ok(EquivariantChainComplex {
        spec,
        name: format!("surface_genus{genus}_Z{d}"),
        orbit_counts: vec![1, d, 1],
        boundaries: vec![d1, d2],
        euler_char: 2 - 2 * i64::from(genus),
    })
}

fn wedge2() -> EquivariantChainComplex {
    let spec = GroupSpec::free_group2();
    let x = GroupElement::Word(vec![Letter::X]);
    let y = GroupElement::Word(vec![Letter::Y]);
    let d1 = RingMatrix::from_rows(vec![vec![
        GroupRingElement::gen_minus_one(&spec, x),
        GroupRingElement::gen_minus_one(&spec, y),
    ]]);
    EquivariantChainComplex {
        spec,
        name: "wedge2_F2".into(),
        orbit_counts: vec![1, 2],
        boundaries: vec![d1],
        euler_char: -1,
    }
}

fn heisenberg_manifold() -> EquivariantChainComplex {
    let spec = GroupSpec::heisenberg();
    let a = GroupElement::Heisenberg(1, 0, 0);
    let b = GroupElement::Heisenberg(0, 1, 0);
    let c = GroupElement::Heisenberg(0, 0, 1);
    let bc = GroupElement::Heisenberg(0, 1, 1);
    let e = spec.identity();
    let diff = |g: &GroupElement, h: &GroupElement| {
        let mut v = GroupRingElement::term(1, g.clone());
        v.add_term(-1, h.clone());
        v
    };
    let d1 = RingMatrix::from_rows(vec![vec![diff(&a, &e), diff(&b, &e), diff(&c, &e)]]);
    // Relators r1 = [a,b]c^{-1}, r2 = [a,c], r3 = [b,c]; Fox derivatives
    // evaluated in the group (aba^{-1} = bc, [a,b] = c):
    //            r1          r2         r3
    //   a:    1 - bc       1 - c        0
    //   b:    a - c          0        1 - c
    //   c:     -1          a - 1      b - 1
    let d2 = RingMatrix::from_rows(vec![
        vec![diff(&e, &bc), diff(&e, &c), GroupRingElement::zero()],
        vec![diff(&a, &c), GroupRingElement::zero(), diff(&e, &c)],
        vec![
            GroupRingElement::term(-1, e.clone()),
            diff(&a, &e),
            diff(&b, &e),
        ],
    ]);
    // Fundamental-class column: (c - 1, 1 - bc, a - c) kills d2 on the
    // left, using that c is central and ab = bca.
    let d3 = RingMatrix::from_rows(vec![
        vec![diff(&c, &e)],
        vec![diff(&e, &bc)],
        vec![diff(&a, &c)],
    ]);
    EquivariantChainComplex {
        spec,
        name: "heisenberg_manifold".into(),
        orbit_counts: vec![1, 3, 3, 1],
        boundaries: vec![d1, d2, d3],
        euler_char: 0,
    }
}

// ---------------------------------------------------------------------
// Text format
//
//   group <family> [<params>]      free_abelian <d> | heisenberg3 | free_group2
//   cells <j> <n_j>                one line per degree, ascending
//   d <j> <row> <col> = <term> [+ <term> ...]
//
// where a term is `<int>*g(<coords>)`: comma-separated integers for
// abelian and Heisenberg groups, a word over x, X, y, Y (capitals are
// inverses, empty for the identity) for free_group2. Omitted entries
// are zero. `#` starts a comment. Unknown fields are rejected.
// ---------------------------------------------------------------------

/// Parses and validates a complex from the documented text format.
pub fn load_complex(path: &Path) -> Result<EquivariantChainComplex, LabError> {
    let text = std::fs::read_to_string(path).map_err(|e| LabError::Parse {
        line: 0,
        msg: format!("cannot read {}: {e}", path.display()),
    })?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "loaded".into());
    parse_complex(&text, &name)
}

pub fn parse_complex(text: &str, name: &str) -> Result<EquivariantChainComplex, LabError> {
    let mut spec: Option<GroupSpec> = None;
    let mut cells: Vec<(usize, usize)> = Vec::new();
    let mut entries: Vec<(usize, usize, usize, GroupRingElement)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        let keyword = fields.next().unwrap();
        match keyword {
            "group" => {
                if spec.is_some() {
                    return Err(parse_err(lineno, "duplicate group line"));
                }
                let family = fields
                    .next()
                    .ok_or_else(|| parse_err(lineno, "missing group family"))?;
                let s = match family {
                    "free_abelian" => {
                        let d: usize = fields
                            .next()
                            .ok_or_else(|| parse_err(lineno, "free_abelian needs a rank"))?
                            .parse()
                            .map_err(|_| parse_err(lineno, "bad free_abelian rank"))?;
                        if d == 0 {
                            return Err(parse_err(lineno, "free_abelian rank must be >= 1"));
                        }
                        GroupSpec::free_abelian(d)
                    }
                    "heisenberg3" => GroupSpec::heisenberg(),
                    "free_group2" => GroupSpec::free_group2(),
                    other => return Err(parse_err(lineno, &format!("unknown family `{other}`"))),
                };
                if fields.next().is_some() {
                    return Err(parse_err(lineno, "trailing fields after group"));
                }
                spec = Some(s);
            }
            "cells" => {
                let j: usize = next_num(&mut fields, lineno, "cells degree")?;
                let n: usize = next_num(&mut fields, lineno, "cells count")?;
                if j != cells.len() {
                    return Err(parse_err(
                        lineno,
                        &format!(
                            "cells lines must be ascending; expected degree {}",
                            cells.len()
                        ),
                    ));
                }
                if n == 0 {
                    return Err(parse_err(lineno, "orbit count must be >= 1"));
                }
                cells.push((j, n));
            }
            "d" => {
                let s = spec.ok_or_else(|| parse_err(lineno, "d before group line"))?;
                let j: usize = next_num(&mut fields, lineno, "boundary degree")?;
                let row: usize = next_num(&mut fields, lineno, "boundary row")?;
                let col: usize = next_num(&mut fields, lineno, "boundary col")?;
                let rest: Vec<&str> = fields.collect();
                let rest = rest.join(" ");
                let sum = rest
                    .strip_prefix("=")
                    .ok_or_else(|| parse_err(lineno, "expected `=` after entry position"))?
                    .trim();
                let value = parse_ring_element(sum, &s, lineno)?;
                entries.push((j, row, col, value));
            }
            other => {
                return Err(parse_err(lineno, &format!("unknown field `{other}`")));
            }
        }
    }

    let spec = spec.ok_or_else(|| parse_err(0, "missing group line"))?;
    if cells.is_empty() {
        return Err(parse_err(0, "missing cells lines"));
    }
    let orbit_counts: Vec<usize> = cells.iter().map(|&(_, n)| n).collect();
    let dim = orbit_counts.len() - 1;
    let mut boundaries: Vec<RingMatrix> = (1..=dim)
        .map(|j| RingMatrix::zeros(orbit_counts[j - 1], orbit_counts[j]))
        .collect();
    for (j, row, col, value) in entries {
        if j == 0 || j > dim {
            return Err(parse_err(0, &format!("boundary degree {j} out of range")));
        }
        if row >= orbit_counts[j - 1] || col >= orbit_counts[j] {
            return Err(parse_err(
                0,
                &format!("boundary entry ({row}, {col}) outside d{j} shape"),
            ));
        }
        boundaries[j - 1].set(row, col, value);
    }

    let chi: i64 = orbit_counts
        .iter()
        .enumerate()
        .map(|(j, &n)| if j % 2 == 0 { n as i64 } else { -(n as i64) })
        .sum();
    let complex = EquivariantChainComplex {
        spec,
        name: name.to_string(),
        orbit_counts,
        boundaries,
        euler_char: chi,
    };
    let report = complex.validate();
    if !report.passed {
        return Err(LabError::Validation(report.messages.join("; ")));
    }
    Ok(complex)
}

fn parse_err(line: usize, msg: &str) -> LabError {
    LabError::Parse {
        line,
        msg: msg.to_string(),
    }
}

fn next_num<'a, T: std::str::FromStr>(
    fields: &mut impl Iterator<Item = &'a str>,
    lineno: usize,
    what: &str,
) -> Result<T, LabError> {
    fields
        .next()
        .ok_or_else(|| parse_err(lineno, &format!("missing {what}")))?
        .parse()
        .map_err(|_| parse_err(lineno, &format!("bad {what}")))
}

fn parse_ring_element(
    text: &str,
    spec: &GroupSpec,
    lineno: usize,
) -> Result<GroupRingElement, LabError> {
    let mut out = GroupRingElement::zero();
    if text == "0" {
        return Ok(out);
    }
    for part in text.split('+') {
        let part = part.trim();
        let (coeff_str, g_str) = part
            .split_once('*')
            .ok_or_else(|| parse_err(lineno, &format!("term `{part}` needs <int>*g(...)")))?;
        let coeff: i64 = coeff_str
            .trim()
            .parse()
            .map_err(|_| parse_err(lineno, &format!("bad coefficient `{coeff_str}`")))?;
        let g_str = g_str.trim();
        let inner = g_str
            .strip_prefix("g(")
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| parse_err(lineno, &format!("unbalanced parentheses in `{g_str}`")))?;
        let g = parse_element(inner, spec, lineno)?;
        out.add_term(coeff, g);
    }
    Ok(out)
}

fn parse_element(inner: &str, spec: &GroupSpec, lineno: usize) -> Result<GroupElement, LabError> {
    match spec.family {
        GroupFamily::FreeAbelian(d) => {
            let coords: Result<Vec<i64>, _> =
                inner.split(',').map(|c| c.trim().parse::<i64>()).collect();
            let coords = coords.map_err(|_| parse_err(lineno, "bad abelian coordinates"))?;
            if coords.len() != d {
                return Err(parse_err(
                    lineno,
                    &format!("expected {d} coordinates, got {}", coords.len()),
                ));
            }
            Ok(GroupElement::Abelian(coords))
        }
        GroupFamily::Heisenberg3 => {
            let coords: Result<Vec<i64>, _> =
                inner.split(',').map(|c| c.trim().parse::<i64>()).collect();
            let coords = coords.map_err(|_| parse_err(lineno, "bad Heisenberg coordinates"))?;
            if coords.len() != 3 {
                return Err(parse_err(lineno, "Heisenberg elements need 3 coordinates"));
            }
            Ok(GroupElement::Heisenberg(coords[0], coords[1], coords[2]))
        }
        GroupFamily::FreeGroup2 => {
            let mut w = Vec::new();
            for ch in inner.chars() {
                let l = Letter::from_symbol(ch)
                    .ok_or_else(|| parse_err(lineno, &format!("bad word letter `{ch}`")))?;
                if w.last().copied() == Some(l.inverse()) {
                    w.pop();
                } else {
                    w.push(l);
                }
            }
            Ok(GroupElement::Word(w))
        }
    }
}

/// Renders a complex in the documented text format (round-trips through
/// [`parse_complex`]).
pub fn format_complex(x: &EquivariantChainComplex) -> String {
    let mut out = String::new();
    let family = match x.spec.family {
        GroupFamily::FreeAbelian(d) => format!("free_abelian {d}"),
        GroupFamily::Heisenberg3 => "heisenberg3".into(),
        GroupFamily::FreeGroup2 => "free_group2".into(),
    };
    let _ = writeln!(out, "group {family}");
    for (j, n) in x.orbit_counts.iter().enumerate() {
        let _ = writeln!(out, "cells {j} {n}");
    }
    for j in 1..=x.dim() {
        let b = x.boundary(j);
        for r in 0..b.nrows {
            for c in 0..b.ncols {
                let e = b.get(r, c);
                if e.is_zero() {
                    continue;
                }
                let terms: Vec<String> =
                    e.iter().map(|(g, coeff)| format!("{coeff}*{g}")).collect();
                let _ = writeln!(out, "d {j} {r} {c} = {}", terms.join(" + "));
            }
        }
    }
    out
}
