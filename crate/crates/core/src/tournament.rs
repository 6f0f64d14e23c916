//! Round-robin tournaments on labeled teams.
//!
//! A tournament on `n` teams records one winner per unordered pair, so it is
//! a complete directed graph ("everyone played everyone, no draws"). Teams
//! are indexed `0..n` and `n` never exceeds [`MAX_TEAMS`].
//!
//! The match matrix is stored as one `u64` bitset per team: bit `j` of
//! `rows[i]` is set exactly when team `i` beat team `j`. Both directions of
//! every pair are kept in sync, so `beats(i, j) != beats(j, i)` always holds
//! for `i != j`.
//!
//! Pairs `(i, j)` with `i < j` are ordered lexicographically throughout:
//! `(0,1), (0,2), ..., (0,n-1), (1,2), ...`. Enumeration indices and
//! coalition orientations both assign their most significant bit to the
//! first pair in this order, so ascending integer order equals
//! lexicographic order over the pair bits.

use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::str::FromStr;

/// Largest supported team count. Rows are single `u64` bitsets.
pub const MAX_TEAMS: usize = 64;

/// Largest team count for which exhaustive enumeration is offered. With
/// `n = 11` there are `C(11,2) = 55` match bits, so every index fits in a
/// `u64`; one more team would not.
pub const MAX_ENUMERATION_TEAMS: usize = 11;

/// Number of unordered pairs among `n` teams.
#[inline]
pub fn pair_count(n: usize) -> usize {
    n * (n - 1) / 2
}

/// Position of pair `(i, j)` in the lexicographic pair order. Requires
/// `i < j < n`.
#[inline]
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// All pairs `(i, j)` with `i < j < n` in lexicographic order.
pub fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(pair_count(n));
    for i in 0..n {
        for j in (i + 1)..n {
            out.push((i, j));
        }
    }
    out
}

// ======================================================================
// Tournament
// ======================================================================

/// Outcome matrix of a round-robin tournament on `n` labeled teams.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tournament {
    n: usize,
    /// Bit `j` of `rows[i]` is set iff team `i` beat team `j`. Bits at
    /// positions `>= n` and on the diagonal are always clear.
    rows: Vec<u64>,
}

impl Tournament {
    /// Builds a tournament from a winner predicate: `lower_wins(i, j)` is
    /// consulted once per pair with `i < j` and answers whether `i` beat `j`.
    ///
    /// Panics if `n` is zero or exceeds [`MAX_TEAMS`].
    pub fn from_fn(n: usize, mut lower_wins: impl FnMut(usize, usize) -> bool) -> Self {
        assert!(n >= 1 && n <= MAX_TEAMS, "team count {n} out of range 1..={MAX_TEAMS}");
        let mut rows = vec![0u64; n];
        for i in 0..n {
            for j in (i + 1)..n {
                if lower_wins(i, j) {
                    rows[i] |= 1 << j;
                } else {
                    rows[j] |= 1 << i;
                }
            }
        }
        Tournament { n, rows }
    }

    /// Number of teams.
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Whether team `i` beat team `j`. Panics if `i == j` or either index is
    /// out of range; a team never plays itself.
    #[inline]
    pub fn beats(&self, i: usize, j: usize) -> bool {
        assert!(i != j && i < self.n && j < self.n, "invalid matchup {i} vs {j}");
        self.rows[i] >> j & 1 == 1
    }

    /// Number of wins of team `i`.
    #[inline]
    pub fn outdegree(&self, i: usize) -> usize {
        assert!(i < self.n);
        self.rows[i].count_ones() as usize
    }

    /// Teams beaten by team `i`, ascending.
    pub fn defeated_set(&self, i: usize) -> Vec<usize> {
        assert!(i < self.n);
        bits_to_vec(self.rows[i])
    }

    /// Bitset of teams beaten by team `i`.
    #[inline]
    pub fn defeated_mask(&self, i: usize) -> u64 {
        assert!(i < self.n);
        self.rows[i]
    }

    /// The team that beat every other team, if one exists. With a single
    /// team that team wins all zero of its matches and qualifies.
    pub fn condorcet_winner(&self) -> Option<usize> {
        (0..self.n).find(|&i| self.outdegree(i) == self.n - 1)
    }

    /// A copy with the match between `i` and `j` reversed and everything
    /// else unchanged. Panics if `i == j` or either index is out of range.
    pub fn flip_match(&self, i: usize, j: usize) -> Tournament {
        assert!(i != j && i < self.n && j < self.n, "invalid matchup {i} vs {j}");
        let mut t = self.clone();
        t.rows[i] ^= 1 << j;
        t.rows[j] ^= 1 << i;
        t
    }

    /// All tournaments that agree with `self` on every match not internal to
    /// `coalition`, including `self` itself. The coalition must be sorted,
    /// duplicate-free, of size at least 2, and in range; violations panic.
    ///
    /// Results are ordered by [`CoalitionMove`] orientation, so the list has
    /// exactly `2^C(k,2)` entries for a coalition of size `k`.
    pub fn s_adjacent_variants(&self, coalition: &[usize]) -> Vec<Tournament> {
        assert_valid_coalition(coalition, self.n);
        let w = pair_count(coalition.len());
        assert!(w < 64, "coalition too large to enumerate orientations");
        (0..1u64 << w)
            .map(|o| CoalitionMove { coalition: coalition.to_vec(), orientation: o }.apply(self))
            .collect()
    }

    /// Position of this tournament in the enumeration order for its size.
    /// Panics if `n` exceeds [`MAX_ENUMERATION_TEAMS`].
    pub fn index(&self) -> u64 {
        let m = pair_count(self.n);
        assert!(self.n <= MAX_ENUMERATION_TEAMS);
        let mut idx = 0u64;
        let mut k = 0;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.rows[i] >> j & 1 == 1 {
                    idx |= 1 << (m - 1 - k);
                }
                k += 1;
            }
        }
        idx
    }

    /// Inverse of [`Tournament::index`]. Panics if `n` is out of range for
    /// enumeration or `index` has bits past the pair count.
    pub fn from_index(n: usize, index: u64) -> Tournament {
        assert!(n >= 1 && n <= MAX_ENUMERATION_TEAMS, "team count {n} not enumerable");
        let m = pair_count(n);
        assert!(m == 64 || index < 1u64 << m, "index {index} out of range for n={n}");
        let mut k = 0;
        Tournament::from_fn(n, |_, _| {
            let bit = index >> (m - 1 - k) & 1 == 1;
            k += 1;
            bit
        })
    }

    /// The unique minimal dominant set: the smallest nonempty set of teams
    /// that all beat every team outside the set. Returned ascending. Equals
    /// `{w}` exactly when `w` is a Condorcet winner.
    pub fn top_cycle(&self) -> Vec<usize> {
        // Every maximum-outdegree team belongs to the minimal dominant set,
        // and closing any of its members under predecessors recovers the
        // whole set: the closure is dominant by construction and a dominant
        // set can never lose members under predecessor closure.
        let start = (0..self.n).max_by_key(|&i| (self.outdegree(i), self.n - i)).unwrap();
        let mut members = 1u64 << start;
        loop {
            let mut grew = false;
            for i in 0..self.n {
                if members >> i & 1 == 0 && self.rows[i] & members != 0 {
                    members |= 1 << i;
                    grew = true;
                }
            }
            if !grew {
                break;
            }
        }
        bits_to_vec(members)
    }

    /// Parses the text form: a line holding `n`, then `n` lines of `n`
    /// space-separated `0`/`1` entries with a zero diagonal and exactly one
    /// winner per pair. Errors carry 1-based line and column positions.
    pub fn parse_text(input: &str) -> Result<Tournament> {
        parse_text(input)
    }
}

impl fmt::Debug for Tournament {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tournament(n={}, index_bits=", self.n)?;
        for (i, j) in all_pairs(self.n) {
            write!(f, "{}", if self.beats(i, j) { 1 } else { 0 })?;
        }
        write!(f, ")")
    }
}

fn bits_to_vec(mut mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    while mask != 0 {
        let i = mask.trailing_zeros() as usize;
        out.push(i);
        mask &= mask - 1;
    }
    out
}

fn assert_valid_coalition(coalition: &[usize], n: usize) {
    assert!(coalition.len() >= 2, "coalition must have at least 2 teams");
    assert!(
        coalition.windows(2).all(|w| w[0] < w[1]),
        "coalition must be sorted and duplicate-free"
    );
    assert!(*coalition.last().unwrap() < n, "coalition member out of range");
}

// ======================================================================
// Coalition moves
// ======================================================================

/// A joint deviation by a coalition: a full reassignment of the outcomes of
/// every match internal to the coalition, leaving all other matches alone.
///
/// Internal pairs follow the lexicographic pair order of the sorted
/// coalition. Orientation bit for the `t`-th internal pair sits at position
/// `w - 1 - t` (for `w` internal pairs) and is set when the lower-indexed
/// team wins, so ascending orientation equals lexicographic order over the
/// internal outcomes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoalitionMove {
    coalition: Vec<usize>,
    orientation: u64,
}

impl CoalitionMove {
    /// Validates and builds a move for tournaments on `n` teams.
    pub fn new(coalition: Vec<usize>, orientation: u64, n: usize) -> Result<CoalitionMove> {
        if coalition.len() < 2 {
            return Err(Error::InvalidArgument("coalition must have at least 2 teams".into()));
        }
        if !coalition.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(
                "coalition must be strictly increasing".into(),
            ));
        }
        if *coalition.last().unwrap() >= n {
            return Err(Error::InvalidArgument(format!(
                "coalition member {} out of range for {n} teams",
                coalition.last().unwrap()
            )));
        }
        let w = pair_count(coalition.len());
        if w < 64 && orientation >= 1u64 << w {
            return Err(Error::InvalidArgument(format!(
                "orientation {orientation} out of range for coalition of {} teams",
                coalition.len()
            )));
        }
        Ok(CoalitionMove { coalition, orientation })
    }

    /// The move that reproduces the internal outcomes `t` already has, so
    /// `m.read(t, s).apply(t) == t`. Panics on an invalid coalition.
    pub fn read(t: &Tournament, coalition: Vec<usize>) -> CoalitionMove {
        assert_valid_coalition(&coalition, t.n());
        let w = pair_count(coalition.len());
        let mut orientation = 0u64;
        let mut k = 0;
        for a in 0..coalition.len() {
            for b in (a + 1)..coalition.len() {
                if t.beats(coalition[a], coalition[b]) {
                    orientation |= 1 << (w - 1 - k);
                }
                k += 1;
            }
        }
        CoalitionMove { coalition, orientation }
    }

    pub fn coalition(&self) -> &[usize] {
        &self.coalition
    }

    pub fn orientation(&self) -> u64 {
        self.orientation
    }

    /// The tournament after the coalition plays this orientation. Panics if
    /// the coalition is out of range for `t`.
    pub fn apply(&self, t: &Tournament) -> Tournament {
        assert!(*self.coalition.last().unwrap() < t.n(), "coalition out of range");
        let mut out = t.clone();
        let w = pair_count(self.coalition.len());
        let mut k = 0;
        for a in 0..self.coalition.len() {
            for b in (a + 1)..self.coalition.len() {
                let (i, j) = (self.coalition[a], self.coalition[b]);
                let lower_wins = self.orientation >> (w - 1 - k) & 1 == 1;
                out.rows[i] &= !(1 << j);
                out.rows[j] &= !(1 << i);
                if lower_wins {
                    out.rows[i] |= 1 << j;
                } else {
                    out.rows[j] |= 1 << i;
                }
                k += 1;
            }
        }
        out
    }
}

// ======================================================================
// Enumeration
// ======================================================================

/// Number of distinct tournaments on `n` labeled teams.
pub fn enumeration_count(n: usize) -> Result<u64> {
    if n == 0 || n > MAX_ENUMERATION_TEAMS {
        return Err(Error::UnsupportedSize(format!(
            "enumeration supports 1..={MAX_ENUMERATION_TEAMS} teams, got {n}"
        )));
    }
    Ok(1u64 << pair_count(n))
}

/// Iterates every tournament on `n` labeled teams in ascending index order.
pub fn enumerate_all(n: usize) -> Result<impl Iterator<Item = Tournament>> {
    let count = enumeration_count(n)?;
    Ok((0..count).map(move |idx| Tournament::from_index(n, idx)))
}

// ======================================================================
// Generated families
// ======================================================================

/// Built-in tournament shapes used by audits and the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyId {
    /// The directed triangle on exactly 3 teams.
    Cycle3,
    /// Team `i` beats every `j > i`.
    Transitive,
    /// Transitive except the bottom team upsets the top one: team 0 beats
    /// teams `1..n-1`, team `n-1` beats only team 0, and the middle is
    /// ordered by index. Needs at least 3 teams.
    SupermanKryptonite,
    /// Every match decided by an independent fair coin from a seeded
    /// generator.
    RandomUniform,
}

impl FamilyId {
    pub const ALL: [FamilyId; 4] = [
        FamilyId::Cycle3,
        FamilyId::Transitive,
        FamilyId::SupermanKryptonite,
        FamilyId::RandomUniform,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FamilyId::Cycle3 => "cycle3",
            FamilyId::Transitive => "transitive",
            FamilyId::SupermanKryptonite => "superman-kryptonite",
            FamilyId::RandomUniform => "random",
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<FamilyId> {
        FamilyId::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown family `{s}`")))
    }
}

/// Builds the `n`-team member of a family. `seed` only matters for
/// [`FamilyId::RandomUniform`]; equal seeds give equal tournaments.
pub fn gen_family(family: FamilyId, n: usize, seed: u64) -> Result<Tournament> {
    if n < 1 || n > MAX_TEAMS {
        return Err(Error::InvalidArgument(format!(
            "team count {n} out of range 1..={MAX_TEAMS}"
        )));
    }
    match family {
        FamilyId::Cycle3 => {
            if n != 3 {
                return Err(Error::InvalidArgument(format!(
                    "family cycle3 is defined only for 3 teams, got {n}"
                )));
            }
            Ok(Tournament::from_fn(3, |i, j| !(i == 0 && j == 2)))
        }
        FamilyId::Transitive => Ok(Tournament::from_fn(n, |_, _| true)),
        FamilyId::SupermanKryptonite => {
            if n < 3 {
                return Err(Error::InvalidArgument(format!(
                    "family superman-kryptonite needs at least 3 teams, got {n}"
                )));
            }
            Ok(Tournament::from_fn(n, |_, _| true).flip_match(0, n - 1))
        }
        FamilyId::RandomUniform => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok(Tournament::from_fn(n, |_, _| rng.gen::<bool>()))
        }
    }
}

// ======================================================================
// Text format
// ======================================================================

/// Tokens of one line with their 1-based starting columns.
fn tokenize(line: &str) -> Vec<(usize, &str)> {
    let line = line.strip_suffix('\r').unwrap_or(line);
    let mut out = Vec::new();
    let mut start = None;
    for (pos, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..pos]));
            }
        } else if start.is_none() {
            start = Some(pos);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn parse_text(input: &str) -> Result<Tournament> {
    let lines: Vec<&str> = input.lines().collect();

    let header = lines.first().ok_or_else(|| Error::parse(1, 1, "expected team count"))?;
    let header_tokens = tokenize(header);
    let (n_col, n_tok) =
        *header_tokens.first().ok_or_else(|| Error::parse(1, 1, "expected team count"))?;
    let n: usize = n_tok
        .parse()
        .map_err(|_| Error::parse(1, n_col, format!("expected team count, found `{n_tok}`")))?;
    if n < 1 {
        return Err(Error::parse(1, n_col, "team count must be at least 1"));
    }
    if n > MAX_TEAMS {
        return Err(Error::parse(1, n_col, format!("team count {n} exceeds {MAX_TEAMS}")));
    }
    if let Some(&(col, _)) = header_tokens.get(1) {
        return Err(Error::parse(1, col, "unexpected token after team count"));
    }

    let mut cells = vec![vec![false; n]; n];
    for i in 0..n {
        let line_no = i + 2;
        let row = lines
            .get(i + 1)
            .ok_or_else(|| Error::parse(line_no, 1, format!("missing row {i} of the matrix")))?;
        let tokens = tokenize(row);
        if tokens.len() != n {
            let (col, detail) = match tokens.get(n) {
                Some(&(col, _)) => (col, "unexpected extra entry"),
                None => (1, "too few entries"),
            };
            return Err(Error::parse(
                line_no,
                col,
                format!("row {i} has {} entries, expected {n}: {detail}", tokens.len()),
            ));
        }
        for (j, &(col, tok)) in tokens.iter().enumerate() {
            let val = match tok {
                "0" => false,
                "1" => true,
                _ => {
                    return Err(Error::parse(
                        line_no,
                        col,
                        format!("matrix entry must be 0 or 1, found `{tok}`"),
                    ))
                }
            };
            if i == j && val {
                return Err(Error::parse(line_no, col, format!("diagonal entry ({i},{i}) must be 0")));
            }
            if j < i && cells[j][i] == val {
                return Err(Error::parse(
                    line_no,
                    col,
                    format!("match between teams {j} and {i} needs exactly one winner"),
                ));
            }
            cells[i][j] = val;
        }
    }
    for (extra, line) in lines.iter().enumerate().skip(n + 1) {
        if let Some(&(col, _)) = tokenize(line).first() {
            return Err(Error::parse(extra + 1, col, "unexpected content after matrix"));
        }
    }

    Ok(Tournament::from_fn(n, |i, j| cells[i][j]))
}

impl FromStr for Tournament {
    type Err = Error;

    fn from_str(s: &str) -> Result<Tournament> {
        parse_text(s)
    }
}

impl fmt::Display for Tournament {
    /// Writes the same text form [`Tournament::parse_text`] reads.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for i in 0..self.n {
            for j in 0..self.n {
                if j > 0 {
                    f.write_str(" ")?;
                }
                let bit = i != j && self.rows[i] >> j & 1 == 1;
                f.write_str(if bit { "1" } else { "0" })?;
            }
            f.write_str("\n")?;
        }
        Ok(())
    }
}

// ======================================================================
// Tests
// ======================================================================

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Four teams: 0 beats 1, 1 beats 2, 2 beats 0 and 3, 3 beats 0 and 1.
    fn sample4() -> Tournament {
        let wins = [(0, 1), (1, 2), (2, 0), (2, 3), (3, 0), (3, 1)];
        Tournament::from_fn(4, |i, j| wins.contains(&(i, j)))
    }

    #[test]
    fn pair_index_enumerates_lexicographically() {
        for n in 1..=12 {
            for (k, (i, j)) in all_pairs(n).into_iter().enumerate() {
                assert_eq!(pair_index(n, i, j), k);
            }
            assert_eq!(all_pairs(n).len(), pair_count(n));
        }
    }

    #[test]
    fn basic_accessors_match_construction() {
        let t = sample4();
        assert_eq!(t.n(), 4);
        assert!(t.beats(0, 1) && !t.beats(1, 0));
        let outdegrees: Vec<usize> = (0..4).map(|i| t.outdegree(i)).collect();
        assert_eq!(outdegrees, vec![1, 1, 2, 2]);
        assert_eq!(t.defeated_set(2), vec![0, 3]);
        assert_eq!(t.defeated_set(3), vec![0, 1]);
        assert_eq!(t.condorcet_winner(), None);
    }

    #[test]
    #[should_panic(expected = "invalid matchup")]
    fn beats_rejects_self_play() {
        sample4().beats(2, 2);
    }

    #[test]
    fn flip_match_is_an_involution() {
        let t = sample4();
        let flipped = t.flip_match(0, 1);
        assert!(flipped.beats(1, 0));
        assert_ne!(flipped, t);
        assert_eq!(flipped.flip_match(1, 0), t);
    }

    #[test]
    fn condorcet_winner_found_when_present() {
        let t = gen_family(FamilyId::Transitive, 5, 0).unwrap();
        assert_eq!(t.condorcet_winner(), Some(0));
        assert_eq!(Tournament::from_fn(1, |_, _| true).condorcet_winner(), Some(0));
    }

    #[test]
    fn s_adjacent_variants_cover_the_cube() {
        let t = sample4();
        let variants = t.s_adjacent_variants(&[0, 1, 3]);
        assert_eq!(variants.len(), 8);
        assert!(variants.contains(&t));
        for (a, va) in variants.iter().enumerate() {
            for vb in &variants[a + 1..] {
                assert_ne!(va, vb);
            }
            // Matches touching team 2 are untouched.
            for other in [0, 1, 3] {
                assert_eq!(va.beats(2, other), t.beats(2, other));
            }
        }
    }

    #[test]
    fn coalition_move_round_trips() {
        let t = sample4();
        let m = CoalitionMove::read(&t, vec![0, 2, 3]);
        assert_eq!(m.apply(&t), t);
        let swapped = CoalitionMove::new(vec![0, 1], 0, 4).unwrap().apply(&t);
        assert!(swapped.beats(1, 0));
        assert_eq!(swapped, t.flip_match(0, 1));
    }

    #[test]
    fn coalition_move_validates_input() {
        assert!(CoalitionMove::new(vec![3], 0, 4).is_err());
        assert!(CoalitionMove::new(vec![1, 1], 0, 4).is_err());
        assert!(CoalitionMove::new(vec![2, 1], 0, 4).is_err());
        assert!(CoalitionMove::new(vec![1, 4], 0, 4).is_err());
        assert!(CoalitionMove::new(vec![1, 2], 2, 4).is_err());
        assert!(CoalitionMove::new(vec![1, 2], 1, 4).is_ok());
    }

    #[test]
    fn enumeration_is_total_and_ordered() {
        assert_eq!(enumeration_count(3).unwrap(), 8);
        let all: Vec<Tournament> = enumerate_all(3).unwrap().collect();
        assert_eq!(all.len(), 8);
        for (idx, t) in all.iter().enumerate() {
            assert_eq!(t.index(), idx as u64);
        }
        // Index 0 has every higher-indexed team winning; the top index is
        // the transitive order.
        assert_eq!(all[0].outdegree(2), 2);
        assert_eq!(all[7], gen_family(FamilyId::Transitive, 3, 0).unwrap());
    }

    #[test]
    fn enumeration_rejects_oversize_requests() {
        assert!(matches!(enumeration_count(12), Err(Error::UnsupportedSize(_))));
        assert!(matches!(enumerate_all(0).err(), Some(Error::UnsupportedSize(_))));
    }

    #[test]
    fn first_pair_is_the_most_significant_index_bit() {
        let m = pair_count(4) as u64;
        let t = Tournament::from_index(4, 1 << (m - 1));
        assert!(t.beats(0, 1));
        for (i, j) in all_pairs(4).into_iter().skip(1) {
            assert!(t.beats(j, i));
        }
    }

    #[test]
    fn families_have_their_defining_shapes() {
        let c = gen_family(FamilyId::Cycle3, 3, 0).unwrap();
        assert!(c.beats(0, 1) && c.beats(1, 2) && c.beats(2, 0));

        let tr = gen_family(FamilyId::Transitive, 6, 0).unwrap();
        let degs: Vec<usize> = (0..6).map(|i| tr.outdegree(i)).collect();
        assert_eq!(degs, vec![5, 4, 3, 2, 1, 0]);

        let sk = gen_family(FamilyId::SupermanKryptonite, 5, 0).unwrap();
        let degs: Vec<usize> = (0..5).map(|i| sk.outdegree(i)).collect();
        assert_eq!(degs, vec![3, 3, 2, 1, 1]);
        assert_eq!(sk.defeated_set(4), vec![0]);
        assert!(sk.beats(0, 1) && sk.beats(1, 4) && sk.beats(4, 0));
    }

    #[test]
    fn families_validate_sizes() {
        assert!(gen_family(FamilyId::Cycle3, 4, 0).is_err());
        assert!(gen_family(FamilyId::SupermanKryptonite, 2, 0).is_err());
        assert!(gen_family(FamilyId::Transitive, 0, 0).is_err());
        assert!(gen_family(FamilyId::Transitive, 65, 0).is_err());
    }

    #[test]
    fn random_family_is_seed_deterministic() {
        let a = gen_family(FamilyId::RandomUniform, 8, 42).unwrap();
        let b = gen_family(FamilyId::RandomUniform, 8, 42).unwrap();
        assert_eq!(a, b);
        let c = gen_family(FamilyId::RandomUniform, 8, 43).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn family_ids_round_trip_through_names() {
        for f in FamilyId::ALL {
            assert_eq!(f.as_str().parse::<FamilyId>().unwrap(), f);
        }
        assert!("no-such-family".parse::<FamilyId>().is_err());
    }

    #[test]
    fn top_cycle_handles_known_shapes() {
        let tr = gen_family(FamilyId::Transitive, 5, 0).unwrap();
        assert_eq!(tr.top_cycle(), vec![0]);

        let c = gen_family(FamilyId::Cycle3, 3, 0).unwrap();
        assert_eq!(c.top_cycle(), vec![0, 1, 2]);

        let sk = gen_family(FamilyId::SupermanKryptonite, 5, 0).unwrap();
        assert_eq!(sk.top_cycle(), vec![0, 1, 2, 3, 4]);

        // Reversing the (0,1) match of sample4 leaves team 0 beaten by all,
        // with the other three in a cycle above it.
        let t = sample4().flip_match(0, 1);
        assert_eq!(t.top_cycle(), vec![1, 2, 3]);

        assert_eq!(Tournament::from_fn(1, |_, _| true).top_cycle(), vec![0]);
    }

    #[test]
    fn display_matches_documented_format() {
        let c = gen_family(FamilyId::Cycle3, 3, 0).unwrap();
        assert_eq!(c.to_string(), "3\n0 1 0\n0 0 1\n1 0 0\n");
    }

    #[test]
    fn parse_accepts_crlf_and_trailing_blank_lines() {
        let t: Tournament = "3\r\n0 1 0\r\n0 0 1\r\n1 0 0\r\n\r\n".parse().unwrap();
        assert_eq!(t, gen_family(FamilyId::Cycle3, 3, 0).unwrap());
    }

    #[test]
    fn parse_errors_carry_positions() {
        let cases: [(&str, usize, usize); 8] = [
            ("", 1, 1),
            ("x\n", 1, 1),
            ("2 2\n0 1\n0 0\n", 1, 3),
            ("3\n0 1 0\n0 0 1\n", 4, 1),
            ("2\n0 1 1\n0 0\n", 2, 5),
            ("2\n0 2\n0 0\n", 2, 3),
            ("2\n1 1\n0 0\n", 2, 1),
            ("2\n0 1\n1 0\n", 3, 1),
        ];
        for (input, line, col) in cases {
            match Tournament::parse_text(input) {
                Err(Error::Parse { line: l, col: c, .. }) => {
                    assert_eq!((l, c), (line, col), "wrong position for {input:?}");
                }
                other => panic!("expected parse error for {input:?}, got {other:?}"),
            }
        }
    }

    #[test]
    fn parse_rejects_missing_winner() {
        // Teams 0 and 1 both recorded as losing to each other.
        let err = Tournament::parse_text("2\n0 0\n0 0\n").unwrap_err();
        match err {
            Error::Parse { line, col, .. } => assert_eq!((line, col), (3, 1)),
            other => panic!("unexpected error {other:?}"),
        }
    }

    fn arb_tournament(max_n: usize) -> impl Strategy<Value = Tournament> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), pair_count(n)).prop_map(move |bits| {
                let mut k = 0;
                Tournament::from_fn(n, |_, _| {
                    let b = bits[k];
                    k += 1;
                    b
                })
            })
        })
    }

    proptest! {
        /// Text output parses back to the same tournament.
        #[test]
        fn prop_text_round_trip(t in arb_tournament(16)) {
            let back: Tournament = t.to_string().parse().unwrap();
            prop_assert_eq!(back, t);
        }

        /// Exactly one of the two directions of every pair is recorded.
        #[test]
        fn prop_antisymmetry(t in arb_tournament(12)) {
            for (i, j) in all_pairs(t.n()) {
                prop_assert!(t.beats(i, j) != t.beats(j, i));
            }
        }

        /// Outdegrees sum to the number of matches.
        #[test]
        fn prop_outdegree_sum(t in arb_tournament(16)) {
            let total: usize = (0..t.n()).map(|i| t.outdegree(i)).sum();
            prop_assert_eq!(total, pair_count(t.n()));
        }

        /// Index round trip within the enumerable range.
        #[test]
        fn prop_index_round_trip(t in arb_tournament(MAX_ENUMERATION_TEAMS)) {
            prop_assert_eq!(Tournament::from_index(t.n(), t.index()), t);
        }

        /// Every top cycle member beats every team outside the top cycle,
        /// and a singleton top cycle is exactly a Condorcet winner.
        #[test]
        fn prop_top_cycle_dominates(t in arb_tournament(12)) {
            let tc = t.top_cycle();
            prop_assert!(!tc.is_empty());
            for &i in &tc {
                for j in 0..t.n() {
                    if !tc.contains(&j) {
                        prop_assert!(t.beats(i, j));
                    }
                }
            }
            match t.condorcet_winner() {
                Some(w) => prop_assert_eq!(tc, vec![w]),
                None => prop_assert!(tc.len() > 1),
            }
        }

        /// Losing to an outsider never evicts the other members: if i is in
        /// the top cycle and its win over a team j *outside* the cycle is
        /// flipped into a loss, every other original member still beats j
        /// directly, so each one keeps a path to every team and stays in the
        /// new top cycle. (The restriction to outsiders matters: flipping a
        /// match between two members can crown j as a Condorcet winner and
        /// collapse the cycle to a singleton.)
        #[test]
        fn prop_top_cycle_grows_when_member_loses_to_outsider(t in arb_tournament(10)) {
            let tc = t.top_cycle();
            for &i in &tc {
                for j in 0..t.n() {
                    if tc.contains(&j) {
                        continue;
                    }
                    // Members beat all non-members, so the match goes i -> j.
                    prop_assert!(t.beats(i, j));
                    let new_tc = t.flip_match(i, j).top_cycle();
                    for &k in &tc {
                        if k != i {
                            prop_assert!(
                                new_tc.contains(&k),
                                "team {} left the top cycle after {} lost to outsider {}",
                                k, i, j,
                            );
                        }
                    }
                }
            }
        }

        /// Variant lists have full cube size and agree off the coalition.
        #[test]
        fn prop_adjacent_variants(t in arb_tournament(7)) {
            let n = t.n();
            prop_assume!(n >= 3);
            let coalition: Vec<usize> = vec![0, n / 2, n - 1];
            let variants = t.s_adjacent_variants(&coalition);
            prop_assert_eq!(variants.len(), 8);
            for v in &variants {
                for (i, j) in all_pairs(n) {
                    let internal = coalition.contains(&i) && coalition.contains(&j);
                    if !internal {
                        prop_assert_eq!(v.beats(i, j), t.beats(i, j));
                    }
                }
            }
        }
    }
}
