//! Partial permutations of `{1, ..., n}`.
//!
//! Elements act on the right: `(p)(fg) = ((p)f)g`, so `f.compose(&g)` means
//! "apply `f`, then `g`". Points are 1-based in every public signature.

use std::fmt;
use std::ops::Mul;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PpermError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("point {point} is outside 1..={degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("point {0} is used more than once")]
    NotInjective(usize),
    #[error("argument is not an idempotent")]
    NotIdempotent,
    #[error("malformed element `{text}`: {reason}")]
    Syntax { text: String, reason: String },
}

/// A partial bijection on `{1, ..., n}`.
///
/// Internally `images[i]` is `0` when `i + 1` is undefined and `j + 1` when
/// `(i + 1) ↦ (j + 1)`. With that encoding the derived order is the canonical
/// one: lexicographic on the image list with "undefined" least.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialPerm {
    images: Vec<u16>,
}

const UNDEF: u16 = 0;

impl PartialPerm {
    /// Builds an element from an image list, `None` meaning undefined.
    pub fn from_images(images: &[Option<usize>]) -> Result<Self, PpermError> {
        let degree = images.len();
        let mut seen = vec![false; degree];
        let mut out = Vec::with_capacity(degree);
        for img in images {
            match *img {
                None => out.push(UNDEF),
                Some(q) => {
                    if q == 0 || q > degree {
                        return Err(PpermError::PointOutOfRange { point: q, degree });
                    }
                    if std::mem::replace(&mut seen[q - 1], true) {
                        return Err(PpermError::NotInjective(q));
                    }
                    out.push(q as u16);
                }
            }
        }
        Ok(PartialPerm { images: out })
    }

    pub fn identity(degree: usize) -> Self {
        PartialPerm {
            images: (1..=degree as u16).collect(),
        }
    }

    pub fn empty(degree: usize) -> Self {
        PartialPerm {
            images: vec![UNDEF; degree],
        }
    }

    /// The identity on `points` (1-based).
    pub fn idempotent_on(
        degree: usize,
        points: impl IntoIterator<Item = usize>,
    ) -> Result<Self, PpermError> {
        let mut images = vec![UNDEF; degree];
        for p in points {
            if p == 0 || p > degree {
                return Err(PpermError::PointOutOfRange { point: p, degree });
            }
            images[p - 1] = p as u16;
        }
        Ok(PartialPerm { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `p`.
    pub fn image(&self, p: usize) -> Option<usize> {
        match self.images.get(p.wrapping_sub(1)) {
            Some(&q) if q != UNDEF => Some(q as usize),
            _ => None,
        }
    }

    pub fn images(&self) -> Vec<Option<usize>> {
        (1..=self.degree()).map(|p| self.image(p)).collect()
    }

    pub fn rank(&self) -> usize {
        self.images.iter().filter(|&&q| q != UNDEF).count()
    }

    pub fn domain(&self) -> Vec<usize> {
        (1..=self.degree())
            .filter(|&p| self.image(p).is_some())
            .collect()
    }

    pub fn image_set(&self) -> Vec<usize> {
        let mut im: Vec<usize> = self
            .images
            .iter()
            .filter(|&&q| q != UNDEF)
            .map(|&q| q as usize)
            .collect();
        im.sort_unstable();
        im
    }

    pub fn is_idempotent(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &q)| q == UNDEF || q as usize == i + 1)
    }

    /// A permutation of `{1, ..., n}`.
    pub fn is_total(&self) -> bool {
        self.images.iter().all(|&q| q != UNDEF)
    }

    /// `f·g` with left-to-right evaluation.
    pub fn compose(&self, other: &PartialPerm) -> Result<PartialPerm, PpermError> {
        if self.degree() != other.degree() {
            return Err(PpermError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &PartialPerm) -> PartialPerm {
        debug_assert_eq!(self.degree(), other.degree());
        let images = self
            .images
            .iter()
            .map(|&q| {
                if q == UNDEF {
                    UNDEF
                } else {
                    other.images[q as usize - 1]
                }
            })
            .collect();
        PartialPerm { images }
    }

    pub fn inverse(&self) -> PartialPerm {
        let mut images = vec![UNDEF; self.degree()];
        for (i, &q) in self.images.iter().enumerate() {
            if q != UNDEF {
                images[q as usize - 1] = (i + 1) as u16;
            }
        }
        PartialPerm { images }
    }

    /// `s·s⁻¹`, the identity on `dom(s)`.
    pub fn left_identity(&self) -> PartialPerm {
        let images = self
            .images
            .iter()
            .enumerate()
            .map(|(i, &q)| if q == UNDEF { UNDEF } else { (i + 1) as u16 })
            .collect();
        PartialPerm { images }
    }

    /// `s⁻¹·s`, the identity on `im(s)`.
    pub fn right_identity(&self) -> PartialPerm {
        let mut images = vec![UNDEF; self.degree()];
        for &q in &self.images {
            if q != UNDEF {
                images[q as usize - 1] = q;
            }
        }
        PartialPerm { images }
    }

    /// Natural partial order: `self` is the restriction of `other` to `dom(self)`.
    pub fn natural_leq(&self, other: &PartialPerm) -> Result<bool, PpermError> {
        if self.degree() != other.degree() {
            return Err(PpermError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self
            .images
            .iter()
            .zip(&other.images)
            .all(|(&a, &b)| a == UNDEF || a == b))
    }

    /// Meet of two idempotents: the identity on the intersection of domains.
    pub fn meet_idem(&self, other: &PartialPerm) -> Result<PartialPerm, PpermError> {
        if self.degree() != other.degree() {
            return Err(PpermError::DegreeMismatch(self.degree(), other.degree()));
        }
        if !self.is_idempotent() || !other.is_idempotent() {
            return Err(PpermError::NotIdempotent);
        }
        Ok(self.mul_unchecked(other))
    }

    /// Disjoint chains `[i₁ … iₖ]` and cycles `(i₁ … iₖ)`, chains first.
    pub fn to_cycle_notation(&self) -> String {
        let n = self.degree();
        if self.rank() == 0 {
            return "∅".to_string();
        }
        let inv = self.inverse();
        let mut visited = vec![false; n + 1];
        let mut out = String::new();
        for start in 1..=n {
            // chain starts: in the domain but not in the image
            if self.image(start).is_none() || inv.image(start).is_some() {
                continue;
            }
            let mut chain = vec![start];
            let mut p = start;
            while let Some(q) = self.image(p) {
                chain.push(q);
                p = q;
            }
            for &c in &chain {
                visited[c] = true;
            }
            push_group(&mut out, '[', ']', &chain);
        }
        for start in 1..=n {
            if visited[start] || self.image(start).is_none() {
                continue;
            }
            let mut cycle = vec![start];
            visited[start] = true;
            let mut p = self.image(start).unwrap();
            while p != start {
                visited[p] = true;
                cycle.push(p);
                p = self.image(p).unwrap();
            }
            push_group(&mut out, '(', ')', &cycle);
        }
        out
    }

    /// Parses either notation.
    ///
    /// * image list: `[2,3,4,1]`, `[-,1,2,3]`
    /// * disjoint chains and cycles: `(1 2 3 4)`, `[4 3 2 1]`, `[1 2 4] (3)`;
    ///   points that are not mentioned are undefined.
    pub fn parse(text: &str, degree: usize) -> Result<PartialPerm, PpermError> {
        let trimmed = text.trim();
        let syntax = |reason: &str| PpermError::Syntax {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        if trimmed.is_empty() {
            return Err(syntax("empty input"));
        }
        if trimmed == "∅" {
            return Ok(PartialPerm::empty(degree));
        }
        let groups = split_groups(trimmed).map_err(|r| syntax(&r))?;
        let image_list = groups.len() == 1
            && groups[0].0 == '['
            && (groups[0].1.contains(',')
                || groups[0].1.contains('-')
                || groups[0].1.split_whitespace().count() == 1);
        if image_list {
            let body = groups[0].1.trim();
            let tokens: Vec<&str> = if body.contains(',') {
                body.split(',').map(str::trim).collect()
            } else {
                body.split_whitespace().collect()
            };
            if tokens.len() != degree {
                return Err(syntax(&format!(
                    "expected {} images, found {}",
                    degree,
                    tokens.len()
                )));
            }
            let images = tokens
                .iter()
                .map(|t| {
                    if *t == "-" {
                        Ok(None)
                    } else {
                        t.parse::<usize>()
                            .map(Some)
                            .map_err(|_| syntax(&format!("bad point `{t}`")))
                    }
                })
                .collect::<Result<Vec<_>, _>>()?;
            return PartialPerm::from_images(&images);
        }
        // disjoint pieces: every point may be mentioned at most once overall
        let mut images: Vec<Option<usize>> = vec![None; degree];
        let mut mentioned = vec![false; degree + 1];
        for (open, body) in &groups {
            let points = body
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| syntax(&format!("bad point `{t}`")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            if points.is_empty() {
                return Err(syntax("empty group"));
            }
            for &p in &points {
                if p == 0 || p > degree {
                    return Err(PpermError::PointOutOfRange { point: p, degree });
                }
                if std::mem::replace(&mut mentioned[p], true) {
                    return Err(PpermError::NotInjective(p));
                }
            }
            if *open == '(' {
                for (i, &p) in points.iter().enumerate() {
                    images[p - 1] = Some(points[(i + 1) % points.len()]);
                }
            } else {
                for w in points.windows(2) {
                    images[w[0] - 1] = Some(w[1]);
                }
            }
        }
        Ok(PartialPerm::from_images(&images).expect("validated above"))
    }
}

fn push_group(out: &mut String, open: char, close: char, points: &[usize]) {
    out.push(open);
    for (i, p) in points.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(&p.to_string());
    }
    out.push(close);
}

fn split_groups(text: &str) -> Result<Vec<(char, String)>, String> {
    let mut groups = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            c if c.is_whitespace() || c == '*' || c == '·' => {}
            '(' | '[' => {
                let close = if c == '(' { ')' } else { ']' };
                let mut body = String::new();
                loop {
                    match chars.next() {
                        Some(d) if d == close => break,
                        Some('(') | Some('[') | Some(')') | Some(']') => {
                            return Err("unbalanced brackets".into());
                        }
                        Some(d) => body.push(d),
                        None => return Err("unterminated group".into()),
                    }
                }
                groups.push((c, body));
            }
            other => return Err(format!("unexpected character `{other}`")),
        }
    }
    if groups.is_empty() {
        return Err("no groups".into());
    }
    Ok(groups)
}

impl Mul for &PartialPerm {
    type Output = PartialPerm;

    /// Panics on degree mismatch; use [`PartialPerm::compose`] for a checked product.
    fn mul(self, rhs: &PartialPerm) -> PartialPerm {
        assert_eq!(self.degree(), rhs.degree(), "degree mismatch");
        self.mul_unchecked(rhs)
    }
}

/// Image-list form, e.g. `[2,4,3,-]`.
impl fmt::Display for PartialPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, &q) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            if q == UNDEF {
                f.write_str("-")?;
            } else {
                write!(f, "{q}")?;
            }
        }
        f.write_str("]")
    }
}

impl fmt::Debug for PartialPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
