//! Level sets of the pseudonorm with the scalar part fixed.
//!
//! Fixing `a1` and the pseudonorm `p` leaves `a3^2 + a4^2 - a2^2 = a1^2 - p`
//! in the vector space `(a2, a3, a4)`: a cone when the right side vanishes,
//! a one-sheet hyperboloid when it is positive, a two-sheet hyperboloid when
//! it is negative.

use std::f64::consts::TAU;
use std::fmt;
use std::io::{self, Write};

use crate::antiquaternion::format_real;
use crate::error::{Error, Result};

pub const DEFAULT_U_STEPS: usize = 64;
pub const DEFAULT_V_STEPS: usize = 33;
pub const DEFAULT_V_MAX: f64 = 2.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SurfaceKind {
    Cone,
    OneSheetHyperboloid,
    TwoSheetHyperboloid,
}

impl SurfaceKind {
    pub fn name(self) -> &'static str {
        match self {
            SurfaceKind::Cone => "Cone",
            SurfaceKind::OneSheetHyperboloid => "OneSheetHyperboloid",
            SurfaceKind::TwoSheetHyperboloid => "TwoSheetHyperboloid",
        }
    }
}

impl fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SurfaceClass {
    pub kind: SurfaceKind,
    /// `a1^2 - p`.
    pub discriminant: f64,
    /// `|a1^2 - p|`, zero for the cone.
    pub scale: f64,
}

impl fmt::Display for SurfaceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "kind={} discriminant={}",
            self.kind,
            format_real(self.discriminant)
        )
    }
}

/// Default classification tolerance `1e-9 (1 + a1^2 + |p|)`.
pub fn default_eps(a1: f64, p: f64) -> f64 {
    1e-9 * (1.0 + a1 * a1 + p.abs())
}

pub fn classify_surface(a1: f64, p: f64, eps: f64) -> SurfaceClass {
    let d = a1 * a1 - p;
    let kind = if d.abs() <= eps {
        SurfaceKind::Cone
    } else if d > 0.0 {
        SurfaceKind::OneSheetHyperboloid
    } else {
        SurfaceKind::TwoSheetHyperboloid
    };
    let scale = if kind == SurfaceKind::Cone {
        0.0
    } else {
        d.abs()
    };
    SurfaceClass {
        kind,
        discriminant: d,
        scale,
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SurfacePoint {
    pub a2: f64,
    pub a3: f64,
    pub a4: f64,
    /// 0 or 1; the cone's nappes and the two-sheet hyperboloid's sheets are
    /// told apart by the sign of `a2`.
    pub sheet: u8,
}

impl SurfacePoint {
    /// `a3^2 + a4^2 - a2^2`.
    pub fn quadric(&self) -> f64 {
        self.a3 * self.a3 + self.a4 * self.a4 - self.a2 * self.a2
    }
}

/// Samples the surface on a `u_steps` (angle) by `v_steps` (radial or
/// hyperbolic parameter) grid.
///
/// - cone: `r` in `[0, v_max]`, `(±r, r cos t, r sin t)`
/// - one sheet: `v` in `[-v_max, v_max]`, `s (sinh v, cosh v cos t, cosh v sin t)`
/// - two sheets: `v` in `[0, v_max]`, `s (±cosh v, sinh v cos t, sinh v sin t)`
///
/// with `s = sqrt(scale)`.
pub fn sample_surface(
    c: &SurfaceClass,
    u_steps: usize,
    v_steps: usize,
    v_max: f64,
) -> Result<Vec<SurfacePoint>> {
    if u_steps < 3 {
        return Err(Error::InvalidSampling(format!(
            "u_steps = {u_steps}, need at least 3"
        )));
    }
    if v_steps < 2 {
        return Err(Error::InvalidSampling(format!(
            "v_steps = {v_steps}, need at least 2"
        )));
    }
    if !(v_max > 0.0 && v_max.is_finite()) {
        return Err(Error::InvalidSampling(format!(
            "v_max = {v_max}, must be positive"
        )));
    }

    let s = c.scale.sqrt();
    let angles: Vec<(f64, f64)> = (0..u_steps)
        .map(|k| (TAU * k as f64 / u_steps as f64).sin_cos())
        .map(|(sin, cos)| (cos, sin))
        .collect();
    let lerp = |lo: f64, i: usize| lo + (v_max - lo) * i as f64 / (v_steps - 1) as f64;

    let mut points = Vec::new();
    match c.kind {
        SurfaceKind::Cone => {
            for (sheet, sign) in [(0u8, 1.0), (1u8, -1.0)] {
                for i in 0..v_steps {
                    let r = lerp(0.0, i);
                    for &(cos, sin) in &angles {
                        points.push(SurfacePoint {
                            a2: sign * r,
                            a3: r * cos,
                            a4: r * sin,
                            sheet,
                        });
                    }
                }
            }
        }
        SurfaceKind::OneSheetHyperboloid => {
            for i in 0..v_steps {
                let v = lerp(-v_max, i);
                let (sh, ch) = (v.sinh(), v.cosh());
                for &(cos, sin) in &angles {
                    points.push(SurfacePoint {
                        a2: s * sh,
                        a3: s * ch * cos,
                        a4: s * ch * sin,
                        sheet: 0,
                    });
                }
            }
        }
        SurfaceKind::TwoSheetHyperboloid => {
            for (sheet, sign) in [(0u8, 1.0), (1u8, -1.0)] {
                for i in 0..v_steps {
                    let v = lerp(0.0, i);
                    let (sh, ch) = (v.sinh(), v.cosh());
                    for &(cos, sin) in &angles {
                        points.push(SurfacePoint {
                            a2: sign * s * ch,
                            a3: s * sh * cos,
                            a4: s * sh * sin,
                            sheet,
                        });
                    }
                }
            }
        }
    }
    Ok(points)
}

/// Writes `a2,a3,a4,sheet` CSV.
pub fn write_csv<W: Write>(points: &[SurfacePoint], mut out: W) -> io::Result<()> {
    writeln!(out, "a2,a3,a4,sheet")?;
    for p in points {
        writeln!(
            out,
            "{},{},{},{}",
            format_real(p.a2),
            format_real(p.a3),
            format_real(p.a4),
            p.sheet
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn classify(a1: f64, p: f64) -> SurfaceClass {
        classify_surface(a1, p, default_eps(a1, p))
    }

    #[test]
    fn classification_cases() {
        let c = classify(1.0, 1.0);
        assert_eq!(c.kind, SurfaceKind::Cone);
        assert_eq!(c.scale, 0.0);
        let c = classify(2.0, 1.0);
        assert_eq!(c.kind, SurfaceKind::OneSheetHyperboloid);
        assert_eq!(c.discriminant, 3.0);
        let c = classify(0.0, 1.0);
        assert_eq!(c.kind, SurfaceKind::TwoSheetHyperboloid);
        assert_eq!(c.discriminant, -1.0);
        assert_eq!(c.scale, 1.0);
    }

    #[test]
    fn boundary_is_pinned_by_eps() {
        assert_eq!(
            classify_surface(1.0, 1.0 - 1e-3, 1e-2).kind,
            SurfaceKind::Cone
        );
        assert_eq!(
            classify_surface(1.0, 1.0 - 1e-3, 1e-4).kind,
            SurfaceKind::OneSheetHyperboloid
        );
        assert_eq!(
            classify_surface(1.0, 1.0 + 1e-3, 1e-4).kind,
            SurfaceKind::TwoSheetHyperboloid
        );
    }

    #[test]
    fn report_line() {
        assert_eq!(classify(1.0, 1.0).to_string(), "kind=Cone discriminant=0");
        assert_eq!(
            classify(2.0, 1.0).to_string(),
            "kind=OneSheetHyperboloid discriminant=3"
        );
        assert_eq!(
            classify(0.0, 1.0).to_string(),
            "kind=TwoSheetHyperboloid discriminant=-1"
        );
    }

    #[test]
    fn cone_grid_points() {
        let pts = sample_surface(&classify(1.0, 1.0), 4, 2, 1.0).unwrap();
        let has = |a2: f64, a3: f64, a4: f64| {
            pts.iter().any(|p| {
                (p.a2 - a2).abs() < 1e-12 && (p.a3 - a3).abs() < 1e-12 && (p.a4 - a4).abs() < 1e-12
            })
        };
        for (a2, a3, a4) in [
            (1.0, 1.0, 0.0),
            (-1.0, 1.0, 0.0),
            (1.0, 0.0, 1.0),
            (-1.0, 0.0, 1.0),
            (0.0, 0.0, 0.0),
        ] {
            assert!(has(a2, a3, a4), "missing ({a2}, {a3}, {a4})");
        }
        assert_eq!(pts.len(), 2 * 2 * 4);
    }

    #[test]
    fn mesh_residuals() {
        for (a1, p) in [(1.0, 1.0), (2.0, 1.0), (0.0, 1.0), (3.0, -5.0), (0.5, 40.0)] {
            let c = classify(a1, p);
            let pts = sample_surface(&c, DEFAULT_U_STEPS, DEFAULT_V_STEPS, DEFAULT_V_MAX).unwrap();
            let target = if c.kind == SurfaceKind::Cone {
                0.0
            } else {
                c.discriminant
            };
            for pt in &pts {
                assert!(
                    (pt.quadric() - target).abs() <= 1e-9 * (1.0 + target.abs()),
                    "{pt:?} off {target}"
                );
            }
        }
    }

    #[test]
    fn two_sheets_are_both_emitted() {
        let pts = sample_surface(&classify(0.0, 1.0), 8, 4, 1.0).unwrap();
        assert!(pts.iter().any(|p| p.a2 > 0.0 && p.sheet == 0));
        assert!(pts.iter().any(|p| p.a2 < 0.0 && p.sheet == 1));
    }

    #[test]
    fn bad_sampling_is_rejected() {
        let c = classify(2.0, 1.0);
        assert!(matches!(
            sample_surface(&c, 2, 5, 1.0),
            Err(Error::InvalidSampling(_))
        ));
        assert!(matches!(
            sample_surface(&c, 5, 1, 1.0),
            Err(Error::InvalidSampling(_))
        ));
        assert!(matches!(
            sample_surface(&c, 5, 5, 0.0),
            Err(Error::InvalidSampling(_))
        ));
        assert!(matches!(
            sample_surface(&c, 5, 5, f64::NAN),
            Err(Error::InvalidSampling(_))
        ));
    }

    #[test]
    fn csv_layout() {
        let pts = sample_surface(&classify(0.0, 1.0), 3, 2, 1.0).unwrap();
        let mut buf = Vec::new();
        write_csv(&pts, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("a2,a3,a4,sheet"));
        assert_eq!(lines.next(), Some("1,0,0,0"));
        assert_eq!(text.lines().count(), 1 + pts.len());
        assert!(text.lines().skip(1).all(|l| l.split(',').count() == 4));
    }
}
