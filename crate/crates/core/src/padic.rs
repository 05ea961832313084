//! Newton polygons at a prime.
//!
//! Points are `(i, v_p(a_i))` for each nonzero coefficient. A segment of slope
//! `s` and horizontal length `L` certifies exactly `L` roots (with
//! multiplicity, in an algebraic closure) of valuation `-s`, i.e. of absolute
//! value `p^s` when `|p|_p = 1/p`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{check_prime, vp_rat, Rational};
use crate::poly::{rational_str, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValuedPoint {
    pub index: usize,
    #[serde(with = "rational_str")]
    pub valuation: Rational,
}

impl ValuedPoint {
    pub fn new(index: usize, valuation: Rational) -> Self {
        Self { index, valuation }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    #[serde(with = "rational_str")]
    pub slope: Rational,
    pub length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    p: u64,
    vertices: Vec<ValuedPoint>,
    segments: Vec<Segment>,
}

impl NewtonPolygon {
    /// Lower convex hull of an arbitrary point set with rational ordinates.
    /// When an index repeats, the lowest point wins.
    pub fn from_points(p: u64, mut points: Vec<ValuedPoint>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        points.sort_by(|a, b| a.index.cmp(&b.index).then(a.valuation.cmp(&b.valuation)));
        points.dedup_by(|later, earlier| later.index == earlier.index);

        let mut hull: Vec<ValuedPoint> = Vec::with_capacity(points.len());
        for pt in points {
            while hull.len() >= 2 && !turns_left(&hull[hull.len() - 2], &hull[hull.len() - 1], &pt)
            {
                hull.pop();
            }
            hull.push(pt);
        }
        let segments = hull
            .windows(2)
            .map(|w| {
                let length = w[1].index - w[0].index;
                Segment {
                    slope: (&w[1].valuation - &w[0].valuation) / Rational::from_integer(length.into()),
                    length,
                }
            })
            .collect();
        Ok(Self {
            p,
            vertices: hull,
            segments,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn vertices(&self) -> &[ValuedPoint] {
        &self.vertices
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// `(valuation, multiplicity)` per segment, left to right. Roots at zero
    /// are not represented here; see [`Polynomial::strip_zero_root`].
    pub fn root_valuations(&self) -> Vec<(Rational, usize)> {
        self.segments
            .iter()
            .map(|s| (-s.slope.clone(), s.length))
            .collect()
    }

    pub fn leftmost(&self) -> Option<&Segment> {
        self.segments.first()
    }

    pub fn rightmost(&self) -> Option<&Segment> {
        self.segments.last()
    }

    /// Total multiplicity of roots whose valuation satisfies `pred`.
    pub fn count_roots(&self, pred: impl Fn(&Rational) -> bool) -> usize {
        self.root_valuations()
            .into_iter()
            .filter(|(v, _)| pred(v))
            .map(|(_, m)| m)
            .sum()
    }
}

fn turns_left(a: &ValuedPoint, b: &ValuedPoint, c: &ValuedPoint) -> bool {
    let abx = Rational::from_integer((b.index - a.index).into());
    let acx = Rational::from_integer((c.index - a.index).into());
    let aby = &b.valuation - &a.valuation;
    let acy = &c.valuation - &a.valuation;
    abx * acy > aby * acx
}

/// Valued points `(i, v_p(a_i))` of the nonzero coefficients of `f`.
pub fn valued_points(f: &Polynomial, p: u64) -> Result<Vec<ValuedPoint>> {
    check_prime(p)?;
    f.terms()
        .map(|(i, c)| Ok(ValuedPoint::new(i, Rational::from_integer(vp_rat(c, p)?.into()))))
        .collect()
}

pub fn newton_polygon(f: &Polynomial, p: u64) -> Result<NewtonPolygon> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    NewtonPolygon::from_points(p, valued_points(f, p)?)
}

#[derive(Serialize, Deserialize)]
struct PolygonJson {
    p: u64,
    vertices: Vec<(usize, String)>,
    segments: Vec<Segment>,
}

impl Serialize for NewtonPolygon {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolygonJson {
            p: self.p,
            vertices: self
                .vertices
                .iter()
                .map(|v| (v.index, crate::poly::format_rational(&v.valuation)))
                .collect(),
            segments: self.segments.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for NewtonPolygon {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = PolygonJson::deserialize(d)?;
        let vertices = raw
            .vertices
            .into_iter()
            .map(|(i, v)| {
                crate::poly::parse_rational(&v)
                    .map(|v| ValuedPoint::new(i, v))
                    .map_err(serde::de::Error::custom)
            })
            .collect::<std::result::Result<_, _>>()?;
        Ok(Self {
            p: raw.p,
            vertices,
            segments: raw.segments,
        })
    }
}
