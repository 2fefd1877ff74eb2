//! Trajectory export: CSV rows of exact and decimal torus coordinates, and an
//! SVG drawing of the two-phase torus as a unit square with identified edges.

use std::fmt::Write as _;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::evolution::Trajectory;
use crate::numkernel::{to_decimal, Rational, Unbounded};
use crate::spectrum::ReducedSpectrum;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExportError {
    #[error("SVG torus view needs exactly two free phases (dimension 3), got dimension {0}")]
    DimensionUnsupported(usize),
}

/// Decimal places of the `_dec` columns.
pub const DECIMAL_PLACES: usize = 12;

/// `step,theta_1_frac,...,theta_1_dec,...` with the ground phase left out.
pub fn trajectory_csv(t: &Trajectory) -> String {
    let skip = usize::from(!t.ground_omitted);
    let width = t.width().saturating_sub(skip);
    let mut out = String::from("step");
    for k in 1..=width {
        let _ = write!(out, ",theta_{k}_frac");
    }
    for k in 1..=width {
        let _ = write!(out, ",theta_{k}_dec");
    }
    out.push('\n');
    for p in &t.points {
        let free = &p.turns[skip..];
        let _ = write!(out, "{}", p.step);
        for x in free {
            let _ = write!(out, ",{x}");
        }
        for x in free {
            let _ = write!(out, ",{}", to_decimal(x, DECIMAL_PLACES));
        }
        out.push('\n');
    }
    out
}

const SIZE: f64 = 400.0;
const MARGIN: f64 = 20.0;

fn px(x: &Rational) -> f64 {
    MARGIN + x.to_f64().unwrap_or(0.0) * SIZE
}

fn py(y: &Rational) -> f64 {
    MARGIN + (1.0 - y.to_f64().unwrap_or(0.0)) * SIZE
}

/// Straight pieces of the flow `(p1 t, p2 t) mod 1` for `t` in `[0, 1]`,
/// split wherever a coordinate wraps.
pub fn wrapped_segments(p1: &Unbounded, p2: &Unbounded) -> Vec<((Rational, Rational), (Rational, Rational))> {
    let mut cuts: Vec<Rational> = Vec::new();
    for p in [p1, p2] {
        let mut i = Unbounded::zero();
        while &i <= p {
            cuts.push(Rational::new(i.clone(), p.clone()));
            i += 1u32;
        }
    }
    cuts.sort();
    cuts.dedup();
    let frac = |x: Rational| Rational::new(x.numer().mod_floor(x.denom()), x.denom().clone());
    let at = |t: &Rational, p: &Unbounded| t * Rational::from_integer(p.clone());
    cuts.windows(2)
        .map(|w| {
            let start = (frac(at(&w[0], p1)), frac(at(&w[0], p2)));
            // The end point is the left limit, so a wrapped coordinate reads 1, not 0.
            let end_coord = |p: &Unbounded| {
                let v = at(&w[1], p);
                let f = frac(v.clone());
                if f.is_zero() && !v.is_zero() {
                    Rational::from_integer(1.into())
                } else {
                    f
                }
            };
            (start, (end_coord(p1), end_coord(p2)))
        })
        .collect()
}

/// Unit-square torus picture: flow line plus one dot per trajectory point.
pub fn trajectory_svg(spec: &ReducedSpectrum, t: &Trajectory) -> Result<String, ExportError> {
    if spec.dimension() != 3 {
        return Err(ExportError::DimensionUnsupported(spec.dimension()));
    }
    let skip = usize::from(!t.ground_omitted);
    let (p1, p2) = (&spec.p()[1], &spec.p()[2]);
    let full = SIZE + 2.0 * MARGIN;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{full:.0}" height="{full:.0}" viewBox="0 0 {full:.0} {full:.0}">"#
    );
    let _ = writeln!(out, "<title>Phase torus p1={p1} p2={p2} N={}</title>", spec.modulus());
    let _ = writeln!(
        out,
        r#"<rect x="{MARGIN:.0}" y="{MARGIN:.0}" width="{SIZE:.0}" height="{SIZE:.0}" fill="none" stroke="black" stroke-width="1.5"/>"#
    );
    let _ = writeln!(out, r#"<g stroke="steelblue" stroke-width="1">"#);
    for ((x0, y0), (x1, y1)) in wrapped_segments(p1, p2) {
        let _ = writeln!(
            out,
            r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}"/>"#,
            px(&x0),
            py(&y0),
            px(&x1),
            py(&y1)
        );
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, r#"<g fill="black">"#);
    for p in &t.points {
        let coords = &p.turns[skip..];
        let _ = writeln!(out, r#"<circle cx="{:.3}" cy="{:.3}" r="3"/>"#, px(&coords[0]), py(&coords[1]));
    }
    let _ = writeln!(out, "</g>");
    out.push_str("</svg>\n");
    Ok(out)
}
