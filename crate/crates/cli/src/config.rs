//! JSON configuration: field mode, billiard pieces and run parameters.

use std::fmt;
use std::path::Path;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize};

use projbill::curves::{right_spherical_on, Billiard, Domain, FramedCurve, Poly};
use projbill::projective::Point2;
use projbill::{FieldMode, Scalar};

use crate::error::CliError;

/// A number as written in the config: a JSON number, or a string `"p/q"`
/// (or `"n"`) that is read exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Num {
    Float(f64),
    Ratio(i64, i64),
}

impl Num {
    pub fn to_f64(self) -> f64 {
        match self {
            Num::Float(x) => x,
            Num::Ratio(p, q) => p as f64 / q as f64,
        }
    }

    fn is_exact(self) -> bool {
        match self {
            Num::Float(x) => x.fract() == 0.0 && x.abs() < 2f64.powi(53),
            Num::Ratio(..) => true,
        }
    }

    pub fn to_scalar<S: Scalar>(self) -> S {
        match self {
            Num::Float(x) if S::EXACT && x.fract() == 0.0 => S::from_i64(x as i64),
            Num::Float(x) => S::from_f64(x),
            Num::Ratio(p, q) => S::from_ratio(p, q),
        }
    }
}

fn parse_ratio(s: &str) -> Option<(i64, i64)> {
    let s = s.trim();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim().parse().ok()?, q.trim().parse().ok()?),
        None => (s.parse().ok()?, 1),
    };
    (q != 0).then_some((p, q))
}

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Num;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a number or a string \"p/q\"")
            }
            fn visit_f64<E: de::Error>(self, x: f64) -> Result<Num, E> {
                Ok(Num::Float(x))
            }
            fn visit_i64<E: de::Error>(self, x: i64) -> Result<Num, E> {
                Ok(Num::Ratio(x, 1))
            }
            fn visit_u64<E: de::Error>(self, x: u64) -> Result<Num, E> {
                i64::try_from(x)
                    .map(|x| Num::Ratio(x, 1))
                    .map_err(|_| E::custom("integer out of range"))
            }
            fn visit_str<E: de::Error>(self, s: &str) -> Result<Num, E> {
                parse_ratio(s)
                    .map(|(p, q)| Num::Ratio(p, q))
                    .ok_or_else(|| E::custom(format!("invalid rational \"{s}\"")))
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainSpec {
    pub lo: f64,
    pub hi: f64,
}

fn domain(d: Option<DomainSpec>) -> Domain {
    d.map_or(Domain::Whole, |d| Domain::interval(d.lo, d.hi))
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PieceSpec {
    /// Segment `(1 − s)·p + s·q` framed through `pivot`.
    LineWithPivot {
        p: [Num; 2],
        q: [Num; 2],
        pivot: [Num; 2],
        domain: Option<DomainSpec>,
    },
    /// Conic `center + x·e1 + y·e2`, `x² + y² = 1`, with Euclidean normals.
    ConicNormal {
        center: [Num; 2],
        e1: [Num; 2],
        e2: [Num; 2],
        domain: Option<DomainSpec>,
    },
    ConicWithPivot {
        center: [Num; 2],
        e1: [Num; 2],
        e2: [Num; 2],
        pivot: [Num; 2],
        domain: Option<DomainSpec>,
    },
    /// Graph `y = f(x)` with frame slope `g(x)`; coefficients by degree.
    GraphCurve {
        f: Vec<Num>,
        frame_slope: Vec<Num>,
        domain: Option<DomainSpec>,
    },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum BilliardSpec {
    RightSpherical {
        p: [Num; 2],
        q: [Num; 2],
        r: [Num; 2],
        domain: Option<DomainSpec>,
    },
    Pieces(Vec<PieceSpec>),
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Viewport {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSpec {
    pub tol: Option<f64>,
    pub grid: Option<usize>,
    pub seed: Option<u64>,
    pub steps: Option<usize>,
    pub s: Option<Num>,
    pub t: Option<Num>,
    /// Imaginary parts of `s`, `t` in complex mode.
    pub s_im: Option<f64>,
    pub t_im: Option<f64>,
    pub s_range: Option<[f64; 2]>,
    pub t_range: Option<[f64; 2]>,
    pub samples: Option<usize>,
    pub sv_tol: Option<f64>,
    pub viewport: Option<Viewport>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(default = "default_field")]
    pub field_mode: FieldMode,
    pub billiard: Option<BilliardSpec>,
    #[serde(default)]
    pub run: RunSpec,
}

fn default_field() -> FieldMode {
    FieldMode::Real
}

impl Default for Config {
    fn default() -> Self {
        Self {
            field_mode: FieldMode::Real,
            billiard: None,
            run: RunSpec::default(),
        }
    }
}

/// Values after command-line overrides.
#[derive(Debug, Clone, Serialize)]
pub struct Settings {
    pub field: FieldMode,
    pub tol: f64,
    pub grid: usize,
    pub seed: u64,
}

impl Config {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Config(m) => CliError::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let cfg: Config = serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        cfg.check_exact()?;
        Ok(cfg)
    }

    fn numbers(&self) -> Vec<(String, Num)> {
        let mut out = Vec::new();
        let mut push = |path: String, xs: &[Num]| {
            for (i, x) in xs.iter().enumerate() {
                out.push((format!("{path}[{i}]"), *x));
            }
        };
        match &self.billiard {
            Some(BilliardSpec::RightSpherical { p, q, r, .. }) => {
                push("billiard.right_spherical.p".into(), p);
                push("billiard.right_spherical.q".into(), q);
                push("billiard.right_spherical.r".into(), r);
            }
            Some(BilliardSpec::Pieces(ps)) => {
                for (k, piece) in ps.iter().enumerate() {
                    let at = |name: &str| format!("billiard.pieces[{k}].{name}");
                    match piece {
                        PieceSpec::LineWithPivot { p, q, pivot, .. } => {
                            push(at("p"), p);
                            push(at("q"), q);
                            push(at("pivot"), pivot);
                        }
                        PieceSpec::ConicNormal { center, e1, e2, .. } => {
                            push(at("center"), center);
                            push(at("e1"), e1);
                            push(at("e2"), e2);
                        }
                        PieceSpec::ConicWithPivot {
                            center, e1, e2, pivot, ..
                        } => {
                            push(at("center"), center);
                            push(at("e1"), e1);
                            push(at("e2"), e2);
                            push(at("pivot"), pivot);
                        }
                        PieceSpec::GraphCurve { f, frame_slope, .. } => {
                            push(at("f"), f);
                            push(at("frame_slope"), frame_slope);
                        }
                    }
                }
            }
            None => {}
        }
        for (name, v) in [("run.s", self.run.s), ("run.t", self.run.t)] {
            if let Some(v) = v {
                out.push((name.into(), v));
            }
        }
        out
    }

    /// Rational mode takes integers and `"p/q"` strings only.
    fn check_exact(&self) -> Result<(), CliError> {
        if self.field_mode != FieldMode::Rational {
            return Ok(());
        }
        for (path, x) in self.numbers() {
            if !x.is_exact() {
                return Err(CliError::Config(format!(
                    "{path}: decimal literal {} in rational mode; write it as \"p/q\"",
                    x.to_f64()
                )));
            }
        }
        Ok(())
    }

    pub fn settings(&self, field: Option<FieldMode>, tol: Option<f64>, grid: Option<usize>, seed: Option<u64>) -> Settings {
        let field = field.unwrap_or(self.field_mode);
        Settings {
            field,
            tol: tol.or(self.run.tol).unwrap_or(1e-9),
            grid: grid.or(self.run.grid).unwrap_or(100),
            seed: seed.or(self.run.seed).unwrap_or(0),
        }
    }

    /// The configured billiard; the right-spherical billiard of the unit
    /// right triangle `(0,0), (0,1), (1,0)` when none is given.
    pub fn billiard<S: Scalar>(&self) -> Result<Billiard<S>, CliError> {
        let pt = |x: &[Num; 2]| Point2::affine(x[0].to_scalar::<S>(), x[1].to_scalar::<S>());
        let v = |x: &[Num; 2]| [x[0].to_scalar::<S>(), x[1].to_scalar::<S>()];
        let poly = |c: &[Num]| Poly::new(c.iter().map(|x| x.to_scalar::<S>()).collect());
        let built = match &self.billiard {
            None => {
                let p = |x: i64, y: i64| Point2::affine(S::from_i64(x), S::from_i64(y));
                right_spherical_on(&p(0, 0), &p(0, 1), &p(1, 0), Domain::interval(0.0, 1.0))
            }
            Some(BilliardSpec::RightSpherical { p, q, r, domain: d }) => right_spherical_on(
                &pt(p),
                &pt(q),
                &pt(r),
                d.map_or(Domain::interval(0.0, 1.0), |d| Domain::interval(d.lo, d.hi)),
            ),
            Some(BilliardSpec::Pieces(ps)) => ps
                .iter()
                .map(|piece| match piece {
                    PieceSpec::LineWithPivot { p, q, pivot, domain: d } => {
                        FramedCurve::line_with_pivot(&pt(p), &pt(q), &pt(pivot), domain(*d))
                    }
                    PieceSpec::ConicNormal { center, e1, e2, domain: d } => {
                        FramedCurve::euclidean_normal_frame(v(center), v(e1), v(e2), domain(*d))
                    }
                    PieceSpec::ConicWithPivot {
                        center,
                        e1,
                        e2,
                        pivot,
                        domain: d,
                    } => FramedCurve::conic_with_pivot(v(center), v(e1), v(e2), &pt(pivot), domain(*d)),
                    PieceSpec::GraphCurve { f, frame_slope, domain: d } => {
                        FramedCurve::graph(poly(f), poly(frame_slope), domain(*d))
                    }
                })
                .collect::<projbill::Result<Vec<_>>>()
                .and_then(Billiard::new),
        };
        built.map_err(|e| CliError::Config(format!("billiard: {e}")))
    }
}
