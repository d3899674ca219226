//! Gauss diagrams: signed, directed chords on an oriented circle.
//!
//! A diagram is stored as the cyclic sequence of its `2n` chord endpoints,
//! read from a basepoint in the direction of the circle. Each chord points
//! from its tail (the overcrossing) to its head (the undercrossing).
//!
//! The textual format is a sequence of tokens `O<label><sign>` (tail) and
//! `U<label><sign>` (head), e.g. `O1+U2+O3+U1+O2+U3+`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type ChordId = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    /// Arrowhead: the undercrossing.
    Head,
    /// Arrowtail: the overcrossing.
    Tail,
}

impl Role {
    pub fn opposite(self) -> Role {
        match self {
            Role::Head => Role::Tail,
            Role::Tail => Role::Head,
        }
    }

    fn letter(self) -> char {
        match self {
            Role::Head => 'U',
            Role::Tail => 'O',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn from_value(v: i32) -> Sign {
        if v < 0 {
            Sign::Neg
        } else {
            Sign::Pos
        }
    }

    pub fn both() -> [Sign; 2] {
        [Sign::Pos, Sign::Neg]
    }
}

impl std::ops::Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Endpoint {
    pub chord: ChordId,
    pub role: Role,
    pub sign: Sign,
}

impl Endpoint {
    pub fn new(chord: ChordId, role: Role, sign: Sign) -> Self {
        Endpoint { chord, role, sign }
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.sign {
            Sign::Pos => '+',
            Sign::Neg => '-',
        };
        write!(f, "{}{}{}", self.role.letter(), self.chord, s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("malformed token at byte {offset}: {found:?}")]
    MalformedToken { offset: usize, found: String },
    #[error("chord {chord} appears twice as {role:?}")]
    DuplicateRole { chord: ChordId, role: Role },
    #[error("the two endpoints of chord {0} carry different signs")]
    SignMismatch(ChordId),
    #[error("chord {0} has only one endpoint")]
    DanglingChord(ChordId),
    #[error("unknown chord {0}")]
    UnknownChord(ChordId),
    #[error("cut position {cut} out of range for a diagram with {len} endpoints")]
    CutOutOfRange { cut: usize, len: usize },
}

/// Rotation-invariant fingerprint of a diagram.
///
/// Each endpoint is encoded as (role, sign, offset to its partner); the key
/// is the lexicographically least rotation of that sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u32>);

impl CanonicalKey {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Decoded entries `(role, sign, partner_offset)`.
    pub fn entries(&self) -> impl Iterator<Item = (Role, Sign, usize)> + '_ {
        self.0.iter().map(|&w| {
            let role = if w & 1 == 1 { Role::Tail } else { Role::Head };
            let sign = if w & 2 == 2 { Sign::Neg } else { Sign::Pos };
            (role, sign, (w >> 2) as usize)
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussDiagram {
    endpoints: Vec<Endpoint>,
}

impl GaussDiagram {
    /// The diagram without chords (the unknot).
    pub fn empty() -> Self {
        GaussDiagram { endpoints: Vec::new() }
    }

    /// Validates the endpoint sequence.
    pub fn from_endpoints(endpoints: Vec<Endpoint>) -> Result<Self, DiagramError> {
        let mut seen: BTreeMap<ChordId, (Option<Role>, Sign)> = BTreeMap::new();
        for e in &endpoints {
            match seen.get_mut(&e.chord) {
                None => {
                    seen.insert(e.chord, (Some(e.role), e.sign));
                }
                Some((first, sign)) => match first {
                    Some(r) if *r == e.role => {
                        return Err(DiagramError::DuplicateRole { chord: e.chord, role: e.role })
                    }
                    Some(_) => {
                        if *sign != e.sign {
                            return Err(DiagramError::SignMismatch(e.chord));
                        }
                        *first = None;
                    }
                    None => {
                        return Err(DiagramError::DuplicateRole { chord: e.chord, role: e.role })
                    }
                },
            }
        }
        if let Some((&c, _)) = seen.iter().find(|(_, (r, _))| r.is_some()) {
            return Err(DiagramError::DanglingChord(c));
        }
        Ok(GaussDiagram { endpoints })
    }

    pub(crate) fn from_endpoints_unchecked(endpoints: Vec<Endpoint>) -> Self {
        debug_assert!(GaussDiagram::from_endpoints(endpoints.clone()).is_ok());
        GaussDiagram { endpoints }
    }

    pub fn parse(text: &str) -> Result<Self, DiagramError> {
        let bytes = text.as_bytes();
        let mut i = 0;
        let mut endpoints = Vec::new();
        let malformed = |start: usize, end: usize| DiagramError::MalformedToken {
            offset: start,
            found: text[start..end.min(text.len())].to_string(),
        };
        while i < bytes.len() {
            if bytes[i].is_ascii_whitespace() || bytes[i] == b',' {
                i += 1;
                continue;
            }
            let start = i;
            let role = match bytes[i] {
                b'O' | b'o' => Role::Tail,
                b'U' | b'u' => Role::Head,
                _ => return Err(malformed(start, start + 1)),
            };
            i += 1;
            let digits = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if digits == i {
                return Err(malformed(start, i + 1));
            }
            let chord: ChordId = text[digits..i].parse().map_err(|_| malformed(start, i))?;
            if chord == 0 {
                return Err(malformed(start, i));
            }
            let sign = match bytes.get(i) {
                Some(b'+') => Sign::Pos,
                Some(b'-') => Sign::Neg,
                _ => return Err(malformed(start, i + 1)),
            };
            i += 1;
            endpoints.push(Endpoint { chord, role, sign });
        }
        GaussDiagram::from_endpoints(endpoints)
    }

    pub fn to_code(&self) -> String {
        self.endpoints.iter().map(|e| e.to_string()).collect()
    }

    pub fn endpoints(&self) -> &[Endpoint] {
        &self.endpoints
    }

    /// Number of chords.
    pub fn n(&self) -> usize {
        self.endpoints.len() / 2
    }

    /// Number of endpoints, `2n`.
    pub fn len(&self) -> usize {
        self.endpoints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.endpoints.is_empty()
    }

    /// Chord labels in increasing order.
    pub fn chords(&self) -> Vec<ChordId> {
        let set: BTreeSet<ChordId> = self.endpoints.iter().map(|e| e.chord).collect();
        set.into_iter().collect()
    }

    pub fn max_label(&self) -> ChordId {
        self.endpoints.iter().map(|e| e.chord).max().unwrap_or(0)
    }

    pub fn contains_chord(&self, c: ChordId) -> bool {
        self.endpoints.iter().any(|e| e.chord == c)
    }

    pub fn sign_of(&self, c: ChordId) -> Option<Sign> {
        self.endpoints.iter().find(|e| e.chord == c).map(|e| e.sign)
    }

    /// `(tail position, head position)` of a chord.
    pub fn positions(&self, c: ChordId) -> Option<(usize, usize)> {
        let mut tail = None;
        let mut head = None;
        for (i, e) in self.endpoints.iter().enumerate() {
            if e.chord == c {
                match e.role {
                    Role::Tail => tail = Some(i),
                    Role::Head => head = Some(i),
                }
            }
        }
        Some((tail?, head?))
    }

    /// `partner[i]` is the position of the other endpoint of the chord at `i`.
    pub fn partners(&self) -> Vec<usize> {
        let mut first: BTreeMap<ChordId, usize> = BTreeMap::new();
        let mut partner = vec![0; self.len()];
        for (i, e) in self.endpoints.iter().enumerate() {
            if let Some(j) = first.insert(e.chord, i) {
                partner[i] = j;
                partner[j] = i;
            }
        }
        partner
    }

    /// Number of overbridges: maximal cyclic runs of tails. The empty
    /// diagram counts as one bridge.
    pub fn bridge_count(&self) -> usize {
        runs_of(&self.endpoints, Role::Tail).max(1)
    }

    /// Genus of the closed surface on which the diagram's 4-valent graph
    /// embeds cellularly, with each crossing's rotation fixed by its sign.
    /// Zero exactly for classical (planar) diagrams.
    pub fn supporting_genus(&self) -> usize {
        let len = self.endpoints.len();
        if len == 0 {
            return 0;
        }
        let out = |q: usize| 2 * q;
        let inc = |q: usize| 2 * q + 1;
        // edge q runs from endpoint q to endpoint q + 1
        let mut alpha = vec![0; 2 * len];
        for q in 0..len {
            let r = (q + 1) % len;
            alpha[out(q)] = inc(r);
            alpha[inc(r)] = out(q);
        }
        // counterclockwise successor of each half-edge at its crossing
        let mut sigma = vec![0; 2 * len];
        for (p, e) in self.endpoints.iter().enumerate() {
            if e.role != Role::Tail {
                continue;
            }
            let (t, h) = self.positions(e.chord).expect("chord present");
            let cycle = match e.sign {
                Sign::Pos => [out(t), out(h), inc(t), inc(h)],
                Sign::Neg => [out(t), inc(h), inc(t), out(h)],
            };
            debug_assert_eq!(p, t);
            for i in 0..4 {
                sigma[cycle[i]] = cycle[(i + 1) % 4];
            }
        }
        let mut seen = vec![false; 2 * len];
        let mut faces = 0;
        for start in 0..2 * len {
            if seen[start] {
                continue;
            }
            faces += 1;
            let mut h = start;
            while !seen[h] {
                seen[h] = true;
                h = sigma[alpha[h]];
            }
        }
        // V - E + F = 2 - 2g with V = n, E = 2n
        (2 + self.n() - faces) / 2
    }

    pub fn is_classical(&self) -> bool {
        self.supporting_genus() == 0
    }

    /// Number of maximal cyclic runs of heads.
    pub fn underbridge_count(&self) -> usize {
        runs_of(&self.endpoints, Role::Head)
    }

    /// Vertical mirror: reverse every arrow and negate every sign.
    pub fn mirror(&self) -> GaussDiagram {
        GaussDiagram {
            endpoints: self
                .endpoints
                .iter()
                .map(|e| Endpoint { chord: e.chord, role: e.role.opposite(), sign: -e.sign })
                .collect(),
        }
    }

    pub fn flip_sign(&self, c: ChordId) -> Result<GaussDiagram, DiagramError> {
        if !self.contains_chord(c) {
            return Err(DiagramError::UnknownChord(c));
        }
        Ok(GaussDiagram {
            endpoints: self
                .endpoints
                .iter()
                .map(|e| if e.chord == c { Endpoint { sign: -e.sign, ..*e } } else { *e })
                .collect(),
        })
    }

    /// Removes both endpoints of every listed chord.
    pub fn delete_chords(&self, ids: &BTreeSet<ChordId>) -> Result<GaussDiagram, DiagramError> {
        if let Some(&c) = ids.iter().find(|&&c| !self.contains_chord(c)) {
            return Err(DiagramError::UnknownChord(c));
        }
        Ok(GaussDiagram {
            endpoints: self.endpoints.iter().filter(|e| !ids.contains(&e.chord)).copied().collect(),
        })
    }

    /// The same cyclic diagram read from basepoint `k`.
    pub fn rotate(&self, k: usize) -> GaussDiagram {
        if self.is_empty() {
            return self.clone();
        }
        let mut endpoints = self.endpoints.clone();
        endpoints.rotate_left(k % self.len());
        GaussDiagram { endpoints }
    }

    /// Relabels chords `1..=n` in order of first appearance.
    pub fn relabeled(&self) -> GaussDiagram {
        let mut map = BTreeMap::new();
        let mut next = 1;
        let endpoints = self
            .endpoints
            .iter()
            .map(|e| {
                let c = *map.entry(e.chord).or_insert_with(|| {
                    next += 1;
                    next - 1
                });
                Endpoint { chord: c, ..*e }
            })
            .collect();
        GaussDiagram { endpoints }
    }

    pub fn canonical_key(&self) -> CanonicalKey {
        let len = self.len();
        if len == 0 {
            return CanonicalKey(Vec::new());
        }
        let partner = self.partners();
        let words: Vec<u32> = self
            .endpoints
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let off = (partner[i] + len - i) % len;
                let role = matches!(e.role, Role::Tail) as u32;
                let sign = matches!(e.sign, Sign::Neg) as u32;
                role | (sign << 1) | ((off as u32) << 2)
            })
            .collect();
        let start = least_rotation(&words);
        let mut key = Vec::with_capacity(len);
        key.extend_from_slice(&words[start..]);
        key.extend_from_slice(&words[..start]);
        CanonicalKey(key)
    }

    /// Connected sum cut open at gap `p1` of `d1` and gap `p2` of `d2`.
    ///
    /// Gap `k` sits just before endpoint `k`. Labels of `d2` are shifted past
    /// the largest label of `d1`.
    pub fn connected_sum(
        d1: &GaussDiagram,
        p1: usize,
        d2: &GaussDiagram,
        p2: usize,
    ) -> Result<GaussDiagram, DiagramError> {
        for (p, d) in [(p1, d1), (p2, d2)] {
            if p > d.len() || (p == d.len() && !d.is_empty()) {
                return Err(DiagramError::CutOutOfRange { cut: p, len: d.len() });
            }
        }
        let shift = d1.max_label();
        let mut endpoints = d1.rotate(p1).endpoints;
        endpoints.extend(
            d2.rotate(p2).endpoints.iter().map(|e| Endpoint { chord: e.chord + shift, ..*e }),
        );
        Ok(GaussDiagram { endpoints })
    }

    /// All connected sums over every pair of cut positions.
    pub fn all_connected_sums(d1: &GaussDiagram, d2: &GaussDiagram) -> Vec<(usize, usize, GaussDiagram)> {
        let gaps = |d: &GaussDiagram| d.len().max(1);
        let mut out = Vec::with_capacity(gaps(d1) * gaps(d2));
        for p1 in 0..gaps(d1) {
            for p2 in 0..gaps(d2) {
                let s = GaussDiagram::connected_sum(d1, p1, d2, p2).expect("cut in range");
                out.push((p1, p2, s));
            }
        }
        out
    }

    /// Uniform random diagram with `n` chords; deterministic in `seed`.
    pub fn random(n: usize, seed: u64) -> GaussDiagram {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut slots: Vec<usize> = (0..2 * n).collect();
        slots.shuffle(&mut rng);
        let mut endpoints = vec![Endpoint::new(0, Role::Head, Sign::Pos); 2 * n];
        for (k, pair) in slots.chunks(2).enumerate() {
            let sign = if rng.gen::<bool>() { Sign::Pos } else { Sign::Neg };
            let (t, h) = if rng.gen::<bool>() { (pair[0], pair[1]) } else { (pair[1], pair[0]) };
            let chord = k as ChordId + 1;
            endpoints[t] = Endpoint::new(chord, Role::Tail, sign);
            endpoints[h] = Endpoint::new(chord, Role::Head, sign);
        }
        GaussDiagram { endpoints }.relabeled()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(DiagramJson::from(self)).expect("diagram serializes")
    }
}

fn runs_of(endpoints: &[Endpoint], role: Role) -> usize {
    let len = endpoints.len();
    (0..len)
        .filter(|&i| endpoints[i].role == role && endpoints[(i + len - 1) % len].role != role)
        .count()
}

/// Start index of the lexicographically least rotation.
fn least_rotation(words: &[u32]) -> usize {
    let n = words.len();
    let mut best = 0;
    for cand in 1..n {
        for k in 0..n {
            let a = words[(cand + k) % n];
            let b = words[(best + k) % n];
            if a != b {
                if a < b {
                    best = cand;
                }
                break;
            }
        }
    }
    best
}

impl FromStr for GaussDiagram {
    type Err = DiagramError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GaussDiagram::parse(s)
    }
}

impl fmt::Display for GaussDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_code())
    }
}

#[derive(Serialize, Deserialize)]
struct EndpointJson {
    chord: ChordId,
    role: String,
    sign: i32,
}

#[derive(Serialize, Deserialize)]
pub(crate) struct DiagramJson {
    n: usize,
    endpoints: Vec<EndpointJson>,
}

impl From<&GaussDiagram> for DiagramJson {
    fn from(d: &GaussDiagram) -> Self {
        DiagramJson {
            n: d.n(),
            endpoints: d
                .endpoints
                .iter()
                .map(|e| EndpointJson {
                    chord: e.chord,
                    role: match e.role {
                        Role::Head => "H".into(),
                        Role::Tail => "T".into(),
                    },
                    sign: e.sign.value(),
                })
                .collect(),
        }
    }
}

impl GaussDiagram {
    pub fn from_json(value: &serde_json::Value) -> Result<GaussDiagram, DiagramError> {
        let parsed: DiagramJson = serde_json::from_value(value.clone()).map_err(|e| {
            DiagramError::MalformedToken { offset: 0, found: e.to_string() }
        })?;
        let endpoints = parsed
            .endpoints
            .into_iter()
            .map(|e| {
                let role = match e.role.as_str() {
                    "H" => Role::Head,
                    "T" => Role::Tail,
                    other => {
                        return Err(DiagramError::MalformedToken { offset: 0, found: other.into() })
                    }
                };
                Ok(Endpoint::new(e.chord, role, Sign::from_value(e.sign)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        GaussDiagram::from_endpoints(endpoints)
    }
}
