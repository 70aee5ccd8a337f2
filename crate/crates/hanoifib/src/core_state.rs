//! States, rule sets and move legality for the Tower of Hanoi and its
//! Fibonacci / (p,q) variants.
//!
//! A *regular state* assigns every disk of `1..=n` to one of three pegs; the
//! stacking order on a peg is implied by radius, so a peg is just a set of
//! radii. Moves come in three kinds:
//!
//! - `single`: the classical one-disk move;
//! - `fib`: the k-Fibonacci move (disk `k` atop peg X, tower `1..k-1` atop peg
//!   Y, disks `k-1` and `k` travel together to the third peg Z);
//! - `pq`: the (p,q)-move (run `k-p+1..=k` atop X, tower `1..=k-p` atop Y, the
//!   top `p+q` disks travel to Z).

use std::fmt;

use crate::{Error, Result};

/// One of the three pegs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Peg {
    A,
    B,
    C,
}

impl Peg {
    pub const ALL: [Peg; 3] = [Peg::A, Peg::B, Peg::C];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Peg {
        Peg::ALL[i]
    }

    /// The two pegs different from `self`, in A < B < C order.
    pub fn others(self) -> [Peg; 2] {
        match self {
            Peg::A => [Peg::B, Peg::C],
            Peg::B => [Peg::A, Peg::C],
            Peg::C => [Peg::A, Peg::B],
        }
    }

    /// The peg that is neither `self` nor `other`.
    pub fn third(self, other: Peg) -> Peg {
        debug_assert_ne!(self, other);
        Peg::from_index(3 - self.index() - other.index())
    }

    /// Cyclic step A -> B -> C -> A ("to the right").
    pub fn next_right(self) -> Peg {
        Peg::from_index((self.index() + 1) % 3)
    }

    /// Cyclic step A -> C -> B -> A ("to the left").
    pub fn next_left(self) -> Peg {
        Peg::from_index((self.index() + 2) % 3)
    }
}

impl fmt::Display for Peg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Peg::A => write!(f, "A"),
            Peg::B => write!(f, "B"),
            Peg::C => write!(f, "C"),
        }
    }
}

/// A set of disk radii, stored as a bitmask (bit `k-1` is disk `k`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct DiskSet(u64);

impl DiskSet {
    pub const EMPTY: DiskSet = DiskSet(0);

    /// The full tower `Δ_n = {1..=n}`.
    pub fn delta(n: u32) -> DiskSet {
        DiskSet::range(1, n)
    }

    /// The range set `Δ_hi^lo = {lo..=hi}` (empty when `lo > hi`; `lo` is
    /// clamped to 1).
    pub fn range(lo: u32, hi: u32) -> DiskSet {
        let lo = lo.max(1);
        if lo > hi {
            return DiskSet::EMPTY;
        }
        let mask = if hi >= 64 { u64::MAX } else { (1u64 << hi) - 1 };
        DiskSet(mask & !((1u64 << (lo - 1)) - 1))
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn contains(self, disk: u32) -> bool {
        disk >= 1 && (self.0 >> (disk - 1)) & 1 == 1
    }

    pub fn contains_all(self, other: DiskSet) -> bool {
        self.0 & other.0 == other.0
    }

    /// The smallest (topmost) disk, or `None` for an empty peg.
    pub fn top(self) -> Option<u32> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() + 1)
        }
    }

    pub fn union(self, other: DiskSet) -> DiskSet {
        DiskSet(self.0 | other.0)
    }

    pub fn minus(self, other: DiskSet) -> DiskSet {
        DiskSet(self.0 & !other.0)
    }

    pub fn intersects(self, other: DiskSet) -> bool {
        self.0 & other.0 != 0
    }

    /// Radii in ascending order (top to bottom).
    pub fn iter(self) -> impl Iterator<Item = u32> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let d = bits.trailing_zeros() + 1;
                bits &= bits - 1;
                Some(d)
            }
        })
    }
}

/// A regular state: an ordered 3-partition of the disks `1..=n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct State {
    pegs: [DiskSet; 3],
    n: u32,
}

impl State {
    /// All disks on `A` — the start position.
    pub fn initial(n: u32) -> State {
        State {
            pegs: [DiskSet::delta(n), DiskSet::EMPTY, DiskSet::EMPTY],
            n,
        }
    }

    /// All disks on `C` — the goal position.
    pub fn goal(n: u32) -> State {
        State {
            pegs: [DiskSet::EMPTY, DiskSet::EMPTY, DiskSet::delta(n)],
            n,
        }
    }

    /// All disks on the given peg.
    pub fn tower_on(n: u32, peg: Peg) -> State {
        let mut pegs = [DiskSet::EMPTY; 3];
        pegs[peg.index()] = DiskSet::delta(n);
        State { pegs, n }
    }

    pub fn new(n: u32, a: DiskSet, b: DiskSet, c: DiskSet) -> Result<State> {
        let s = State { pegs: [a, b, c], n };
        s.validate()?;
        Ok(s)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn peg(&self, peg: Peg) -> DiskSet {
        self.pegs[peg.index()]
    }

    /// The peg holding the given disk.
    pub fn peg_of(&self, disk: u32) -> Peg {
        for p in Peg::ALL {
            if self.peg(p).contains(disk) {
                return p;
            }
        }
        panic!("disk {disk} not present in state");
    }

    pub fn validate(&self) -> Result<()> {
        let [a, b, c] = self.pegs;
        if a.intersects(b) || a.intersects(c) || b.intersects(c) {
            return Err(Error::InvalidState(format!("pegs overlap in {self}")));
        }
        if a.union(b).union(c) != DiskSet::delta(self.n) {
            return Err(Error::InvalidState(format!(
                "pegs do not partition 1..={} in {self}",
                self.n
            )));
        }
        Ok(())
    }

    fn with_pegs(&self, pegs: [DiskSet; 3]) -> State {
        State { pegs, n: self.n }
    }
}

impl fmt::Display for State {
    /// Prints `(2345,-,1)` style: radii ascending and `-` for an empty
    /// peg. Radii are dot-separated once disks beyond 9 exist.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in Peg::ALL.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            let set = self.peg(*p);
            if set.is_empty() {
                write!(f, "-")?;
            } else {
                for (j, d) in set.iter().enumerate() {
                    if j > 0 && self.n > 9 {
                        write!(f, ".")?;
                    }
                    write!(f, "{d}")?;
                }
            }
        }
        write!(f, ")")
    }
}

/// Which move family is in force.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Classical,
    Fibonacci,
    Pq { p: u32, q: u32 },
}

/// Where the tower `Δ_{k-2}` ends up after a k-Fibonacci move: `Original`
/// leaves it on Y, `Variant` transfers it to X. Counts are unaffected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Style {
    #[default]
    Original,
    Variant,
}

/// The digraph on pegs restricting the principal disk's trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PegDigraph([[bool; 3]; 3]);

impl PegDigraph {
    /// All six ordered pairs allowed (the default).
    pub fn full() -> PegDigraph {
        let mut g = [[false; 3]; 3];
        for x in 0..3 {
            for y in 0..3 {
                g[x][y] = x != y;
            }
        }
        PegDigraph(g)
    }

    /// Linear restriction: A<->B and B<->C only.
    pub fn linear() -> PegDigraph {
        PegDigraph::from_pairs(&[(Peg::A, Peg::B), (Peg::B, Peg::A), (Peg::B, Peg::C), (Peg::C, Peg::B)])
    }

    /// Clockwise-cyclic restriction: A->B, B->C, C->A.
    pub fn clockwise() -> PegDigraph {
        PegDigraph::from_pairs(&[(Peg::A, Peg::B), (Peg::B, Peg::C), (Peg::C, Peg::A)])
    }

    pub fn from_pairs(pairs: &[(Peg, Peg)]) -> PegDigraph {
        let mut g = [[false; 3]; 3];
        for &(x, y) in pairs {
            if x != y {
                g[x.index()][y.index()] = true;
            }
        }
        PegDigraph(g)
    }

    pub fn allows(&self, src: Peg, dst: Peg) -> bool {
        self.0[src.index()][dst.index()]
    }

    pub fn is_full(&self) -> bool {
        *self == PegDigraph::full()
    }

    /// Every pair of `self` is also a pair of `other`.
    pub fn subset_of(&self, other: &PegDigraph) -> bool {
        Peg::ALL.iter().all(|&x| {
            Peg::ALL
                .iter()
                .all(|&y| !self.allows(x, y) || other.allows(x, y))
        })
    }
}

impl Default for PegDigraph {
    fn default() -> Self {
        PegDigraph::full()
    }
}

/// A full rule set: family, style and peg restriction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RuleSet {
    pub family: Family,
    pub style: Style,
    pub digraph: PegDigraph,
}

impl RuleSet {
    pub fn classical() -> RuleSet {
        RuleSet {
            family: Family::Classical,
            style: Style::Original,
            digraph: PegDigraph::full(),
        }
    }

    pub fn fibonacci(style: Style) -> RuleSet {
        RuleSet {
            family: Family::Fibonacci,
            style,
            digraph: PegDigraph::full(),
        }
    }

    /// The linear-restricted Fibonacci variant (A<->B, B<->C).
    pub fn fibonacci_linear() -> RuleSet {
        RuleSet {
            family: Family::Fibonacci,
            style: Style::Original,
            digraph: PegDigraph::linear(),
        }
    }

    pub fn pq(p: u32, q: u32) -> Result<RuleSet> {
        if p < 1 {
            return Err(Error::Domain(format!("pq requires p >= 1, got p={p}")));
        }
        Ok(RuleSet {
            family: Family::Pq { p, q },
            style: Style::Original,
            digraph: PegDigraph::full(),
        })
    }

    pub fn with_digraph(mut self, digraph: PegDigraph) -> RuleSet {
        self.digraph = digraph;
        self
    }
}

/// The tag on a legal transition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MoveKind {
    /// Classical single-disk move.
    Single,
    /// k-Fibonacci move (k = principal disk).
    Fib,
    /// (p,q)-move (k = top disk of the principal run).
    Pq,
}

impl MoveKind {
    pub fn name(self) -> &'static str {
        match self {
            MoveKind::Single => "single",
            MoveKind::Fib => "fib",
            MoveKind::Pq => "pq",
        }
    }
}

/// A tagged legal transition.
///
/// `src` holds the principal disk; `lower` is the peg supplying the lower
/// tower (absent for classical moves and for principal-only Fibonacci /
/// (p,q) moves where that tower is empty).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Move {
    pub kind: MoveKind,
    pub disk: u32,
    pub src: Peg,
    pub lower: Option<Peg>,
    pub dst: Peg,
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{} {}->{}", self.kind.name(), self.disk, self.src, self.dst)
    }
}

/// All moves legal in `state` under `rules`, ordered by ascending principal
/// disk, then destination peg A < B < C.
pub fn legal_moves(state: &State, rules: &RuleSet) -> Result<Vec<Move>> {
    state.validate()?;
    let mut moves = Vec::new();
    match rules.family {
        Family::Classical => {
            for x in Peg::ALL {
                let Some(k) = state.peg(x).top() else { continue };
                for z in x.others() {
                    let ok = match state.peg(z).top() {
                        Some(t) => t > k,
                        None => true,
                    };
                    if ok && rules.digraph.allows(x, z) {
                        moves.push(Move {
                            kind: MoveKind::Single,
                            disk: k,
                            src: x,
                            lower: None,
                            dst: z,
                        });
                    }
                }
            }
        }
        Family::Fibonacci => {
            for x in Peg::ALL {
                let Some(k) = state.peg(x).top() else { continue };
                if k == 1 {
                    // Either other peg plays Y (its top segment is Δ_0), so
                    // d_1 may go to either peg.
                    for z in x.others() {
                        if rules.digraph.allows(x, z) {
                            moves.push(Move {
                                kind: MoveKind::Fib,
                                disk: 1,
                                src: x,
                                lower: None,
                                dst: z,
                            });
                        }
                    }
                } else {
                    for y in x.others() {
                        if state.peg(y).contains_all(DiskSet::delta(k - 1)) {
                            let z = x.third(y);
                            if rules.digraph.allows(x, z) {
                                moves.push(Move {
                                    kind: MoveKind::Fib,
                                    disk: k,
                                    src: x,
                                    lower: Some(y),
                                    dst: z,
                                });
                            }
                        }
                    }
                }
            }
        }
        Family::Pq { p, q: _ } => {
            for x in Peg::ALL {
                let Some(top) = state.peg(x).top() else { continue };
                // Principal run Δ_k^{k-p+1} atop x: the run's top is
                // max(1, k-p+1), so the candidate k values are
                // top ..= top+p-1, capped at n.
                for k in top..=(top + p - 1).min(state.n) {
                    let run = DiskSet::range(k + 1 - p.min(k), k);
                    if run.top() != Some(top) || !state.peg(x).contains_all(run) {
                        continue;
                    }
                    if k <= p {
                        // Y's top segment Δ_{k-p} is empty: either peg works.
                        for z in x.others() {
                            if rules.digraph.allows(x, z) {
                                moves.push(Move {
                                    kind: MoveKind::Pq,
                                    disk: k,
                                    src: x,
                                    lower: None,
                                    dst: z,
                                });
                            }
                        }
                    } else {
                        for y in x.others() {
                            if state.peg(y).contains_all(DiskSet::delta(k - p)) {
                                let z = x.third(y);
                                if rules.digraph.allows(x, z) {
                                    moves.push(Move {
                                        kind: MoveKind::Pq,
                                        disk: k,
                                        src: x,
                                        lower: Some(y),
                                        dst: z,
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    moves.sort_by_key(|m| (m.disk, m.dst));
    moves.dedup();
    Ok(moves)
}

/// Checks the legality conditions of `mv` in `state`, naming the violated one.
pub fn check_legal(state: &State, mv: &Move, rules: &RuleSet) -> Result<()> {
    state.validate()?;
    let fail = |why: String| Err(Error::IllegalMove(format!("{mv} in {state}: {why}")));
    if mv.src == mv.dst {
        return fail("source equals destination".into());
    }
    if let Some(y) = mv.lower {
        if y == mv.src || y == mv.dst {
            return fail("lower-tower peg must differ from source and destination".into());
        }
    }
    let k = mv.disk;
    match (rules.family, mv.kind) {
        (Family::Classical, MoveKind::Single) => {
            if state.peg(mv.src).top() != Some(k) {
                return fail(format!("disk {k} is not atop the source peg"));
            }
            if let Some(t) = state.peg(mv.dst).top() {
                if t < k {
                    return fail(format!("destination is topped by smaller disk {t}"));
                }
            }
        }
        (Family::Fibonacci, MoveKind::Fib) => {
            if state.peg(mv.src).top() != Some(k) {
                return fail(format!("disk {k} is not atop the source peg"));
            }
            if k >= 2 {
                let y = match mv.lower {
                    Some(y) => y,
                    None => return fail("k-Fibonacci move with k >= 2 needs a lower-tower peg".into()),
                };
                if !state.peg(y).contains_all(DiskSet::delta(k - 1)) {
                    return fail(format!("peg {y} is not topped by the tower 1..{}", k - 1));
                }
                if mv.dst != mv.src.third(y) {
                    return fail("destination must be the third peg".into());
                }
            }
        }
        (Family::Pq { p, .. }, MoveKind::Pq) => {
            let run = DiskSet::range(k + 1 - p.min(k), k);
            if state.peg(mv.src).top() != run.top() || !state.peg(mv.src).contains_all(run) {
                return fail(format!("source peg is not topped by the run {}..{k}", k + 1 - p.min(k)));
            }
            if k > p {
                let y = match mv.lower {
                    Some(y) => y,
                    None => return fail("(p,q)-move with k > p needs a lower-tower peg".into()),
                };
                if !state.peg(y).contains_all(DiskSet::delta(k - p)) {
                    return fail(format!("peg {y} is not topped by the tower 1..{}", k - p));
                }
                if mv.dst != mv.src.third(y) {
                    return fail("destination must be the third peg".into());
                }
            }
        }
        (fam, kind) => {
            return fail(format!("{} move not part of family {fam:?}", kind.name()));
        }
    }
    if !rules.digraph.allows(mv.src, mv.dst) {
        return fail(format!(
            "principal trajectory {}->{} excluded by the peg restriction",
            mv.src, mv.dst
        ));
    }
    Ok(())
}

/// Applies a legal move, returning the successor state.
pub fn apply_move(state: &State, mv: &Move, rules: &RuleSet) -> Result<State> {
    check_legal(state, mv, rules)?;
    let k = mv.disk;
    let mut pegs = state.pegs;
    match (mv.kind, rules.style) {
        (MoveKind::Single, _) => {
            let d = DiskSet::range(k, k);
            pegs[mv.src.index()] = pegs[mv.src.index()].minus(d);
            pegs[mv.dst.index()] = pegs[mv.dst.index()].union(d);
        }
        (MoveKind::Fib, style) => {
            let moved = DiskSet::range(k.saturating_sub(1).max(1), k); // {k-1, k} (just {1} for k=1)
            pegs[mv.src.index()] = pegs[mv.src.index()].minus(moved);
            if let Some(y) = mv.lower {
                pegs[y.index()] = pegs[y.index()].minus(moved);
                if style == Style::Variant && k >= 3 {
                    // Δ_{k-2} transfers from Y to X instead of staying on Y.
                    let rest = DiskSet::delta(k - 2);
                    pegs[y.index()] = pegs[y.index()].minus(rest);
                    pegs[mv.src.index()] = pegs[mv.src.index()].union(rest);
                }
            }
            pegs[mv.dst.index()] = pegs[mv.dst.index()].union(moved);
        }
        (MoveKind::Pq, _) => {
            let (p, q) = match rules.family {
                Family::Pq { p, q } => (p, q),
                _ => unreachable!("check_legal admits pq moves only under the pq family"),
            };
            // Δ_k^{k-p+1-q} travels to Z; Δ_{k-p-q} stays on Y.
            let moved = DiskSet::range(k + 1 - (p + q).min(k), k);
            pegs[mv.src.index()] = pegs[mv.src.index()].minus(moved);
            if let Some(y) = mv.lower {
                pegs[y.index()] = pegs[y.index()].minus(moved);
            }
            pegs[mv.dst.index()] = pegs[mv.dst.index()].union(moved);
        }
    }
    let next = state.with_pegs(pegs);
    next.validate()?;
    Ok(next)
}
