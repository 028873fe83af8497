//! Finite projective planes of prime order.
//!
//! Planes are built with the affine-plus-infinity model over the integers
//! mod q: the q² affine points `(x, y)`, one point at infinity per slope plus
//! one for the vertical direction, lines `y = mx + b`, `x = c` and the line at
//! infinity. Point and line ids are dense integers in `0..q²+q+1`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest order accepted by [`build_plane`].
pub const MAX_ORDER: usize = 97;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlaneError {
    #[error("order {0} is not prime")]
    NonPrimeOrder(usize),
    #[error("order {0} exceeds the supported maximum of {MAX_ORDER}")]
    OrderTooLarge(usize),
    #[error("id {id} out of range (size {size})")]
    IdOutOfRange { id: usize, size: usize },
    #[error("malformed incidence data: {0}")]
    Malformed(String),
}

/// Incidence structure of a projective plane of order `n`.
///
/// `incidence[p][l]` is true when point `p` lies on line `l`. Structures
/// imported through [`ProjectivePlane::from_incidence`] are not checked;
/// run [`verify_axioms`] on them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectivePlane {
    order: usize,
    incidence: Vec<Vec<bool>>,
    points_of_line: Vec<Vec<usize>>,
    lines_of_point: Vec<Vec<usize>>,
}

impl ProjectivePlane {
    /// Wraps a raw point-by-line incidence matrix.
    pub fn from_incidence(order: usize, incidence: Vec<Vec<bool>>) -> Result<Self, PlaneError> {
        let num_points = incidence.len();
        if num_points == 0 {
            return Err(PlaneError::Malformed("empty incidence matrix".into()));
        }
        let num_lines = incidence[0].len();
        if incidence.iter().any(|row| row.len() != num_lines) {
            return Err(PlaneError::Malformed("ragged incidence matrix".into()));
        }
        let mut points_of_line = vec![Vec::new(); num_lines];
        let mut lines_of_point = vec![Vec::new(); num_points];
        for (p, row) in incidence.iter().enumerate() {
            for (l, &on) in row.iter().enumerate() {
                if on {
                    points_of_line[l].push(p);
                    lines_of_point[p].push(l);
                }
            }
        }
        Ok(Self { order, incidence, points_of_line, lines_of_point })
    }

    /// Builds a structure from explicit point lists, one per line.
    pub fn from_lines(order: usize, num_points: usize, lines: &[Vec<usize>]) -> Result<Self, PlaneError> {
        let mut incidence = vec![vec![false; lines.len()]; num_points];
        for (l, pts) in lines.iter().enumerate() {
            for &p in pts {
                if p >= num_points {
                    return Err(PlaneError::IdOutOfRange { id: p, size: num_points });
                }
                incidence[p][l] = true;
            }
        }
        Self::from_incidence(order, incidence)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn num_points(&self) -> usize {
        self.lines_of_point.len()
    }

    pub fn num_lines(&self) -> usize {
        self.points_of_line.len()
    }

    pub fn incidence(&self) -> &[Vec<bool>] {
        &self.incidence
    }

    pub fn is_incident(&self, point: usize, line: usize) -> bool {
        self.incidence[point][line]
    }

    /// Sorted ids of the points on `line`.
    pub fn points_of_line(&self, line: usize) -> Result<&[usize], PlaneError> {
        self.points_of_line
            .get(line)
            .map(Vec::as_slice)
            .ok_or(PlaneError::IdOutOfRange { id: line, size: self.num_lines() })
    }

    /// Sorted ids of the lines through `point`.
    pub fn lines_of_point(&self, point: usize) -> Result<&[usize], PlaneError> {
        self.lines_of_point
            .get(point)
            .map(Vec::as_slice)
            .ok_or(PlaneError::IdOutOfRange { id: point, size: self.num_points() })
    }

    /// Incidence matrix as CSV of 0/1, rows are points and columns lines.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.num_points() * self.num_lines() * 2);
        for row in &self.incidence {
            let cells: Vec<&str> = row.iter().map(|&b| if b { "1" } else { "0" }).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// Parses the CSV produced by [`ProjectivePlane::to_csv`]. The order is
    /// recovered from the point count `n²+n+1`.
    pub fn from_csv(text: &str) -> Result<Self, PlaneError> {
        let mut reader = csv::ReaderBuilder::new().has_headers(false).trim(csv::Trim::All).from_reader(text.as_bytes());
        let mut rows = Vec::new();
        for record in reader.records() {
            let record = record.map_err(|e| PlaneError::Malformed(e.to_string()))?;
            let row = record
                .iter()
                .map(|cell| match cell {
                    "0" => Ok(false),
                    "1" => Ok(true),
                    other => Err(PlaneError::Malformed(format!("cell {other:?} is not 0/1"))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(row);
        }
        let order = order_from_size(rows.len())
            .ok_or_else(|| PlaneError::Malformed(format!("{} points is not n²+n+1", rows.len())))?;
        Self::from_incidence(order, rows)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_record()).expect("plane serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, PlaneError> {
        let record: PlaneRecord = serde_json::from_str(text).map_err(|e| PlaneError::Malformed(e.to_string()))?;
        record.try_into()
    }

    pub fn to_record(&self) -> PlaneRecord {
        PlaneRecord {
            order: self.order,
            incidence: self.incidence.iter().map(|row| row.iter().map(|&b| u8::from(b)).collect()).collect(),
        }
    }
}

/// JSON form `{order, incidence: [[0/1, ...], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct PlaneRecord {
    pub order: usize,
    pub incidence: Vec<Vec<u8>>,
}

impl TryFrom<PlaneRecord> for ProjectivePlane {
    type Error = PlaneError;

    fn try_from(record: PlaneRecord) -> Result<Self, Self::Error> {
        let rows = record
            .incidence
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|v| match v {
                        0 => Ok(false),
                        1 => Ok(true),
                        other => Err(PlaneError::Malformed(format!("entry {other} is not 0/1"))),
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        ProjectivePlane::from_incidence(record.order, rows)
    }
}

fn order_from_size(size: usize) -> Option<usize> {
    (1..=size).take_while(|n| n * n + n < size).find(|n| n * n + n + 1 == size)
}

pub fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Constructs the projective plane of prime order `q`.
pub fn build_plane(q: usize) -> Result<ProjectivePlane, PlaneError> {
    if !is_prime(q) {
        return Err(PlaneError::NonPrimeOrder(q));
    }
    if q > MAX_ORDER {
        return Err(PlaneError::OrderTooLarge(q));
    }
    let affine = |x: usize, y: usize| x * q + y;
    let slope_point = |m: usize| q * q + m;
    let vertical_point = q * q + q;

    let mut lines = Vec::with_capacity(q * q + q + 1);
    // y = m x + b
    for m in 0..q {
        for b in 0..q {
            let mut pts: Vec<usize> = (0..q).map(|x| affine(x, (m * x + b) % q)).collect();
            pts.push(slope_point(m));
            pts.sort_unstable();
            lines.push(pts);
        }
    }
    // x = c
    for c in 0..q {
        let mut pts: Vec<usize> = (0..q).map(|y| affine(c, y)).collect();
        pts.push(vertical_point);
        lines.push(pts);
    }
    lines.push((0..=q).map(|m| q * q + m).collect());

    ProjectivePlane::from_lines(q, q * q + q + 1, &lines)
}

/// Outcome of [`verify_axioms`]. Each failing check carries a witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub order: usize,
    /// Point and line counts equal `n²+n+1`.
    pub counts: Result<(), (usize, usize)>,
    /// Every line has `n+1` points: witness is `(line, size)`.
    pub line_sizes: Result<(), (usize, usize)>,
    /// Every point is on `n+1` lines: witness is `(point, degree)`.
    pub point_degrees: Result<(), (usize, usize)>,
    /// Two distinct points share exactly one line: witness is the point pair.
    pub axiom1: Result<(), (usize, usize)>,
    /// Two distinct lines share exactly one point: witness is the line pair.
    pub axiom2: Result<(), (usize, usize)>,
    /// Four points, no three collinear.
    pub axiom3: Result<[usize; 4], ()>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.counts.is_ok()
            && self.line_sizes.is_ok()
            && self.point_degrees.is_ok()
            && self.axiom1.is_ok()
            && self.axiom2.is_ok()
            && self.axiom3.is_ok()
    }
}

/// For each pair of members of `groups` (lists of items), check that exactly
/// one item is shared. `members_of_item[i]` lists the groups containing item i.
fn unique_common(groups: &[Vec<usize>], members_of_item: &[Vec<usize>]) -> Result<(), (usize, usize)> {
    let mut seen = vec![0u32; groups.len()];
    for (g, items) in groups.iter().enumerate() {
        seen.iter_mut().for_each(|s| *s = 0);
        for &item in items {
            for &other in &members_of_item[item] {
                seen[other] += 1;
            }
        }
        for (other, &count) in seen.iter().enumerate() {
            if other != g && count != 1 {
                return Err((g.min(other), g.max(other)));
            }
        }
    }
    Ok(())
}

fn collinear(plane: &ProjectivePlane, pts: &[usize]) -> bool {
    plane.lines_of_point[pts[0]].iter().any(|&l| pts[1..].iter().all(|&p| plane.incidence[p][l]))
}

fn find_quadrangle(plane: &ProjectivePlane) -> Option<[usize; 4]> {
    let n = plane.num_points();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if collinear(plane, &[a, b, c]) {
                    continue;
                }
                for d in c + 1..n {
                    if !collinear(plane, &[a, b, d]) && !collinear(plane, &[a, c, d]) && !collinear(plane, &[b, c, d]) {
                        return Some([a, b, c, d]);
                    }
                }
            }
        }
    }
    None
}

/// Checks the three projective-plane axioms and the regularity counts.
pub fn verify_axioms(plane: &ProjectivePlane) -> AxiomReport {
    let n = plane.order;
    let expected = n * n + n + 1;
    let counts = if plane.num_points() == expected && plane.num_lines() == expected {
        Ok(())
    } else {
        Err((plane.num_points(), plane.num_lines()))
    };
    let line_sizes = match plane.points_of_line.iter().enumerate().find(|(_, p)| p.len() != n + 1) {
        Some((l, p)) => Err((l, p.len())),
        None => Ok(()),
    };
    let point_degrees = match plane.lines_of_point.iter().enumerate().find(|(_, l)| l.len() != n + 1) {
        Some((p, l)) => Err((p, l.len())),
        None => Ok(()),
    };
    let axiom1 = unique_common(&plane.lines_of_point, &plane.points_of_line);
    let axiom2 = unique_common(&plane.points_of_line, &plane.lines_of_point);
    let axiom3 = find_quadrangle(plane).ok_or(());
    AxiomReport { order: n, counts, line_sizes, point_degrees, axiom1, axiom2, axiom3 }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fano_counts() {
        let p = build_plane(2).unwrap();
        assert_eq!((p.num_points(), p.num_lines()), (7, 7));
        for l in 0..7 {
            assert_eq!(p.points_of_line(l).unwrap().len(), 3);
        }
        assert!(verify_axioms(&p).all_pass());
    }

    #[test]
    fn order_three_counts() {
        let p = build_plane(3).unwrap();
        assert_eq!((p.num_points(), p.num_lines()), (13, 13));
        assert!(p.points_of_line(0).unwrap().len() == 4);
        assert!(verify_axioms(&p).all_pass());
    }

    #[test]
    fn rejects_non_prime_and_large() {
        assert_eq!(build_plane(4), Err(PlaneError::NonPrimeOrder(4)));
        assert_eq!(build_plane(1), Err(PlaneError::NonPrimeOrder(1)));
        assert_eq!(build_plane(101), Err(PlaneError::OrderTooLarge(101)));
    }

    #[test]
    fn out_of_range_ids() {
        let p = build_plane(2).unwrap();
        assert_eq!(p.points_of_line(7), Err(PlaneError::IdOutOfRange { id: 7, size: 7 }));
        assert_eq!(p.lines_of_point(9), Err(PlaneError::IdOutOfRange { id: 9, size: 7 }));
    }

    #[test]
    fn flipped_bit_breaks_an_incidence_axiom() {
        let p = build_plane(2).unwrap();
        let mut m = p.incidence().to_vec();
        m[0][0] = !m[0][0];
        let bad = ProjectivePlane::from_incidence(2, m).unwrap();
        let report = verify_axioms(&bad);
        assert!(report.axiom1.is_err() || report.axiom2.is_err());
        assert!(!report.all_pass());
    }

    #[test]
    fn near_pencil_fails_non_degeneracy() {
        // one line through p1..p4 plus lines {p0, pi}
        let mut lines = vec![vec![1, 2, 3, 4]];
        for i in 1..=4 {
            lines.push(vec![0, i]);
        }
        let s = ProjectivePlane::from_lines(2, 5, &lines).unwrap();
        let report = verify_axioms(&s);
        assert!(report.axiom1.is_ok());
        assert!(report.axiom2.is_ok());
        assert_eq!(report.axiom3, Err(()));
    }

    #[test]
    fn csv_and_json_round_trip() {
        let p = build_plane(3).unwrap();
        assert_eq!(ProjectivePlane::from_csv(&p.to_csv()).unwrap(), p);
        assert_eq!(ProjectivePlane::from_json(&p.to_json()).unwrap(), p);
        assert!(ProjectivePlane::from_csv("0,1\n1,2\n").is_err());
        assert!(ProjectivePlane::from_json("{\"order\":2,\"incidence\":[[3]]}").is_err());
    }
}
