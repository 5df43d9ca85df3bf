//! Choosing two black points on a coloured cycle that split the coloured
//! points roughly at a prescribed count.

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PointColor {
    Black,
    White,
    Red,
    Uncolored,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DivisionError {
    #[error("m must be positive")]
    ZeroM,
    #[error("interval starting at black point {index} holds {white} white points, more than m = {m}")]
    CrowdedInterval { index: usize, white: usize, m: usize },
    #[error("{white} white points do not outnumber {red} red points")]
    NotMoreWhite { white: usize, red: usize },
    #[error("p = {p_twice}/2 is outside [m, |W ∪ R| - m] = [{m}, {upper}]")]
    POutOfRange { p_twice: usize, m: usize, upper: usize },
    #[error("fewer than two black points")]
    TooFewBlack,
    #[error("no feasible pair of black points")]
    NoFeasiblePair,
}

/// Chosen pair: positions of two distinct black points and the number `q`
/// of white or red points strictly between them, going forward.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Division {
    pub first: usize,
    pub second: usize,
    pub q: usize,
}

/// Checks the hypotheses individually, then scans every ordered pair of black
/// points for one with `p - m < q < p + m`. `p` is passed doubled so that
/// half-integers are exact. Among feasible pairs the one with `q` closest to
/// `p` wins, ties going to the earliest pair.
pub fn division_search(points: &[PointColor], m: usize, p_twice: usize) -> Result<Division, DivisionError> {
    if m == 0 {
        return Err(DivisionError::ZeroM);
    }
    let blacks: Vec<usize> = (0..points.len()).filter(|&i| points[i] == PointColor::Black).collect();
    let white = points.iter().filter(|&&c| c == PointColor::White).count();
    let red = points.iter().filter(|&&c| c == PointColor::Red).count();
    let ell = white + red;
    if white <= red {
        return Err(DivisionError::NotMoreWhite { white, red });
    }
    if p_twice < 2 * m || p_twice + 2 * m > 2 * ell {
        return Err(DivisionError::POutOfRange { p_twice, m, upper: ell.saturating_sub(m) });
    }
    if blacks.len() < 2 {
        if blacks.len() == 1 {
            let w = count_between(points, blacks[0], blacks[0], PointColor::White);
            if w > m {
                return Err(DivisionError::CrowdedInterval { index: 0, white: w, m });
            }
        }
        return Err(DivisionError::TooFewBlack);
    }
    for (index, &b) in blacks.iter().enumerate() {
        let next = blacks[(index + 1) % blacks.len()];
        let w = count_between(points, b, next, PointColor::White);
        if w > m {
            return Err(DivisionError::CrowdedInterval { index, white: w, m });
        }
    }

    let mut best: Option<(usize, Division)> = None;
    for &i in &blacks {
        for &j in &blacks {
            if i == j {
                continue;
            }
            let q = count_between(points, i, j, PointColor::White) + count_between(points, i, j, PointColor::Red);
            let dist = (2 * q).abs_diff(p_twice);
            if dist < 2 * m && best.is_none_or(|(d, _)| dist < d) {
                best = Some((dist, Division { first: i, second: j, q }));
            }
        }
    }
    best.map(|(_, d)| d).ok_or(DivisionError::NoFeasiblePair)
}

/// Points of colour `c` strictly inside the forward interval from `from` to
/// `to`; the whole cycle minus `from` when they coincide.
fn count_between(points: &[PointColor], from: usize, to: usize, c: PointColor) -> usize {
    let t = points.len();
    let mut count = 0;
    let mut i = (from + 1) % t;
    while i != to {
        if points[i] == c {
            count += 1;
        }
        i = (i + 1) % t;
        if i == (from + 1) % t {
            break;
        }
    }
    count
}
