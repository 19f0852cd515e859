//! Group presentations and the geometry of their Cayley graphs.
//!
//! Mathematical background.  A presentation `⟨S | R⟩` describes a group as a
//! quotient of the free group on `S`.  After *symmetrizing* `R` — closing it
//! under cyclic permutation and inversion, with every element cyclically
//! reduced — a *piece* is a common prefix of two distinct elements of the
//! symmetrized set.  The metric small-cancellation condition `C′(1/n)` asks
//! that every piece `u` of a relator `r` satisfy `|u| < |r|/n`; the
//! combinatorial condition `C(n)` asks that no relator be a concatenation of
//! fewer than `n` pieces.  `C′(1/n)` implies `C(n+1)`.
//!
//! Right-angled Artin groups (the fundamental groups of Salvetti complexes)
//! have a fast shortlex normal form: a word is first made geodesic by
//! cancelling inverse pairs that can be brought together using the defining
//! commutations, then the lexicographically least reordering is extracted
//! greedily.  This gives a decidable word problem, so their Cayley-graph
//! balls can be built exactly; the same holds trivially for free groups.
//!
//! A geodesic triangle is *δ-thin* when each side lies in the closed
//! δ-neighbourhood of the union of the other two.  On a ball of a Cayley
//! graph we estimate δ from below by scanning vertex triples in the interior
//! of the ball (to avoid boundary-truncation artifacts) and maximizing
//! thinness over enumerated geodesics; on trees geodesics are unique and the
//! estimate is exact, giving δ = 0.
//!
//! Words are stored as vectors of nonzero integers: letter `i > 0` is the
//! generator with index `i - 1`, and `-i` is its inverse.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::constructions::SimplicialGraph;
use crate::error::GroupError;

/// Default cap on the radius of a Cayley-graph ball.
pub const DEFAULT_RADIUS_CAP: usize = 6;

/// Default cap on the number of geodesics enumerated per vertex pair when
/// estimating δ.
pub const DEFAULT_GEODESIC_CAP: usize = 8;

/// Default cap on the length of words fed to the normal-form routine.
pub const DEFAULT_LENGTH_CAP: usize = 64;

fn env_cap(var: &str, default: usize) -> usize {
    std::env::var(var)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(default)
}

/// Configured radius cap (`CUBICAL_RADIUS_CAP` overrides the default).
pub fn radius_cap() -> usize {
    env_cap("CUBICAL_RADIUS_CAP", DEFAULT_RADIUS_CAP)
}

/// Configured geodesic-enumeration cap (`CUBICAL_GEODESIC_CAP` overrides).
pub fn geodesic_cap() -> usize {
    env_cap("CUBICAL_GEODESIC_CAP", DEFAULT_GEODESIC_CAP)
}

/// Configured word-length cap (`CUBICAL_LENGTH_CAP` overrides).
pub fn length_cap() -> usize {
    env_cap("CUBICAL_LENGTH_CAP", DEFAULT_LENGTH_CAP)
}

/// Freely reduce a word by cancelling adjacent inverse pairs.
pub fn free_reduce(word: &[i32]) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::with_capacity(word.len());
    for &l in word {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// The formal inverse of a word.
pub fn invert(word: &[i32]) -> Vec<i32> {
    word.iter().rev().map(|&l| -l).collect()
}

/// Parse a word over single-character generator names; an uppercase letter
/// denotes the inverse of the corresponding lowercase generator.
pub fn word_from_str(generators: &[String], text: &str) -> Result<Vec<i32>, GroupError> {
    let mut word = Vec::new();
    for ch in text.chars() {
        if ch.is_whitespace() {
            continue;
        }
        let lower = ch.to_ascii_lowercase().to_string();
        let idx = generators
            .iter()
            .position(|g| *g == lower)
            .ok_or_else(|| GroupError::UnknownGenerator(lower.clone()))?;
        let letter = (idx + 1) as i32;
        word.push(if ch.is_ascii_uppercase() { -letter } else { letter });
    }
    Ok(word)
}

/// Render a word over single-character generator names (uppercase = inverse).
pub fn word_to_str(generators: &[String], word: &[i32]) -> String {
    word.iter()
        .map(|&l| {
            let name = &generators[(l.unsigned_abs() as usize) - 1];
            if l < 0 {
                name.to_ascii_uppercase()
            } else {
                name.clone()
            }
        })
        .collect()
}

/// A group presentation `⟨ generators | relators ⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    /// Relators, freely reduced on ingestion.
    pub relators: Vec<Vec<i32>>,
}

impl Presentation {
    /// Build a presentation; relators are freely reduced and letters checked
    /// against the generator list.
    pub fn new(generators: Vec<String>, relators: Vec<Vec<i32>>) -> Result<Self, GroupError> {
        let k = generators.len() as i32;
        let mut reduced = Vec::with_capacity(relators.len());
        for r in &relators {
            for &l in r {
                if l == 0 || l.abs() > k {
                    return Err(GroupError::UnknownGenerator(format!("#{l}")));
                }
            }
            reduced.push(free_reduce(r));
        }
        Ok(Presentation {
            generators,
            relators: reduced,
        })
    }

    /// Parse generators and string relators (uppercase = inverse).
    pub fn from_words(generators: &[&str], relators: &[&str]) -> Result<Self, GroupError> {
        let gens: Vec<String> = generators.iter().map(|g| g.to_string()).collect();
        let rels = relators
            .iter()
            .map(|r| word_from_str(&gens, r))
            .collect::<Result<Vec<_>, _>>()?;
        Presentation::new(gens, rels)
    }

    /// The surface-group presentation with one relator
    /// `[a1,b1]···[ag,bg]` of length `4g`.
    pub fn surface(genus: usize) -> Self {
        let mut gens = Vec::new();
        for i in 1..=genus {
            gens.push(format!("a{i}"));
            gens.push(format!("b{i}"));
        }
        let mut rel = Vec::new();
        for i in 0..genus {
            let a = (2 * i + 1) as i32;
            let b = (2 * i + 2) as i32;
            rel.extend_from_slice(&[a, b, -a, -b]);
        }
        Presentation {
            generators: gens,
            relators: vec![rel],
        }
    }
}

/// A relator set closed under cyclic permutation and inversion, with every
/// element cyclically reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetrizedSet {
    pub words: BTreeSet<Vec<i32>>,
}

fn cyclic_reduce(word: &[i32]) -> Vec<i32> {
    let mut w = free_reduce(word);
    while w.len() >= 2 && w[0] == -w[w.len() - 1] {
        w.pop();
        w.remove(0);
        w = free_reduce(&w);
    }
    w
}

/// Close the relator set under cyclic permutation and inversion.
pub fn symmetrize(p: &Presentation) -> Result<SymmetrizedSet, GroupError> {
    let mut words = BTreeSet::new();
    for (idx, r) in p.relators.iter().enumerate() {
        let base = cyclic_reduce(r);
        if base.is_empty() {
            return Err(GroupError::EmptyRelator(idx));
        }
        for seed in [base.clone(), invert(&base)] {
            for shift in 0..seed.len() {
                let mut rot = seed[shift..].to_vec();
                rot.extend_from_slice(&seed[..shift]);
                words.insert(rot);
            }
        }
    }
    Ok(SymmetrizedSet { words })
}

fn common_prefix_len(a: &[i32], b: &[i32]) -> usize {
    a.iter().zip(b.iter()).take_while(|(x, y)| x == y).count()
}

/// Maximum piece length over the symmetrized set, with one witness pair of
/// relators sharing a maximal piece.  A piece is a common prefix of two
/// distinct elements.
pub fn pieces(r: &SymmetrizedSet) -> (usize, Option<(Vec<i32>, Vec<i32>)>) {
    let words: Vec<&Vec<i32>> = r.words.iter().collect();
    let mut best = 0;
    let mut witness = None;
    for i in 0..words.len() {
        for j in (i + 1)..words.len() {
            let l = common_prefix_len(words[i], words[j]);
            if l > best {
                best = l;
                witness = Some((words[i].clone(), words[j].clone()));
            }
        }
    }
    (best, witness)
}

/// Is `sub` a piece, i.e. a prefix of at least two distinct symmetrized words?
fn is_piece(r: &SymmetrizedSet, sub: &[i32]) -> bool {
    r.words
        .iter()
        .filter(|w| w.len() >= sub.len() && w[..sub.len()] == *sub)
        .take(2)
        .count()
        >= 2
}

/// Minimum number of pieces whose concatenation is `word`, if any covering
/// exists.
fn min_piece_covering(r: &SymmetrizedSet, word: &[i32]) -> Option<usize> {
    let n = word.len();
    let mut dp: Vec<Option<usize>> = vec![None; n + 1];
    dp[n] = Some(0);
    for i in (0..n).rev() {
        for j in (i + 1)..=n {
            if let Some(rest) = dp[j] {
                if is_piece(r, &word[i..j]) {
                    let cand = rest + 1;
                    if dp[i].is_none_or(|cur| cand < cur) {
                        dp[i] = Some(cand);
                    }
                }
            }
        }
    }
    dp[0]
}

/// Check the metric condition `C′(1/n)` and the combinatorial condition
/// `C(n)` for the symmetrized presentation.
pub fn small_cancellation(p: &Presentation, n: usize) -> Result<(bool, bool), GroupError> {
    if n < 2 {
        return Err(GroupError::Malformed(format!(
            "small-cancellation index must be at least 2, got {n}"
        )));
    }
    let sym = symmetrize(p)?;
    let words: Vec<&Vec<i32>> = sym.words.iter().collect();
    let mut cprime = true;
    for (i, r) in words.iter().enumerate() {
        let mut max_piece = 0;
        for (j, other) in words.iter().enumerate() {
            if i != j {
                max_piece = max_piece.max(common_prefix_len(r, other));
            }
        }
        // C'(1/n): |u| < |r| / n, i.e. n|u| < |r|.
        if n * max_piece >= r.len() {
            cprime = false;
            break;
        }
    }
    let mut c = true;
    for r in &words {
        if let Some(k) = min_piece_covering(&sym, r) {
            if k < n {
                c = false;
                break;
            }
        }
    }
    Ok((cprime, c))
}

fn letter_key(l: i32) -> (u32, bool) {
    (l.unsigned_abs(), l < 0)
}

fn shortlex_key(w: &[i32]) -> Vec<(u32, bool)> {
    w.iter().map(|&l| letter_key(l)).collect()
}

fn commutes(graph: &SimplicialGraph, a: i32, b: i32) -> bool {
    let ua = (a.unsigned_abs() - 1) as usize;
    let ub = (b.unsigned_abs() - 1) as usize;
    ua != ub && graph.adjacent(ua, ub)
}

/// Shortlex-minimal representative of `word` in the right-angled Artin group
/// of `graph`.  Generator `i+1` is vertex `i`; the fixed order is
/// `x1 < x1⁻¹ < x2 < …`.
pub fn raag_normal_form(graph: &SimplicialGraph, word: &[i32]) -> Result<Vec<i32>, GroupError> {
    let k = graph.vertices.len() as i32;
    for &l in word {
        if l == 0 || l.abs() > k {
            return Err(GroupError::UnknownGenerator(format!("#{l}")));
        }
    }
    let cap = length_cap();
    if word.len() > cap {
        return Err(GroupError::LengthCapExceeded(cap));
    }
    let mut w = free_reduce(word);

    // Make the word geodesic: cancel any inverse pair that commutes past
    // everything between its two letters.
    'reduce: loop {
        for i in 0..w.len() {
            for j in (i + 1)..w.len() {
                if w[j] == -w[i] && w[i + 1..j].iter().all(|&m| commutes(graph, m, w[i])) {
                    w.remove(j);
                    w.remove(i);
                    w = free_reduce(&w);
                    continue 'reduce;
                }
                if !commutes(graph, w[j], w[i]) {
                    break;
                }
            }
        }
        break;
    }

    // Greedily extract the least letter that commutes to the front; this is
    // the lexicographically least linearization of the trace of `w`.
    let mut out = Vec::with_capacity(w.len());
    let mut rest = w;
    while !rest.is_empty() {
        let mut pick = 0;
        for i in 1..rest.len() {
            if !rest[..i].iter().all(|&m| commutes(graph, m, rest[i])) {
                continue;
            }
            if letter_key(rest[i]) < letter_key(rest[pick]) {
                pick = i;
            }
        }
        out.push(rest.remove(pick));
    }
    Ok(out)
}

/// A group with a solvable normal form: free of a given rank, or the
/// right-angled Artin group of a simplicial graph.
#[derive(Clone, Debug)]
pub enum GroupSpec {
    Free(usize),
    Raag(SimplicialGraph),
}

impl GroupSpec {
    pub fn rank(&self) -> usize {
        match self {
            GroupSpec::Free(k) => *k,
            GroupSpec::Raag(g) => g.vertices.len(),
        }
    }

    /// Generator names: vertex labels for a RAAG, `a, b, c, …` for a free
    /// group of rank at most 26, `x1, x2, …` beyond that.
    pub fn generator_names(&self) -> Vec<String> {
        match self {
            GroupSpec::Raag(g) => g.vertices.clone(),
            GroupSpec::Free(k) => {
                if *k <= 26 {
                    (0..*k)
                        .map(|i| ((b'a' + i as u8) as char).to_string())
                        .collect()
                } else {
                    (1..=*k).map(|i| format!("x{i}")).collect()
                }
            }
        }
    }

    /// The normal form of a word in this group.
    pub fn normal_form(&self, word: &[i32]) -> Result<Vec<i32>, GroupError> {
        match self {
            GroupSpec::Free(k) => {
                for &l in word {
                    if l == 0 || l.abs() > *k as i32 {
                        return Err(GroupError::UnknownGenerator(format!("#{l}")));
                    }
                }
                Ok(free_reduce(word))
            }
            GroupSpec::Raag(g) => raag_normal_form(g, word),
        }
    }
}

/// The ball of a given radius in a Cayley graph.  Vertices are normal-form
/// words; a directed edge runs from `g` to `g′` with label `s` exactly when
/// `g (g′)⁻¹ = s`, i.e. `g = s·g′`.  (This differs from the more common
/// `g⁻¹g′ ∈ S` convention by an orientation choice and yields an isomorphic
/// graph.)
#[derive(Clone, Debug)]
pub struct CayleyGraphBall {
    pub spec: GroupSpec,
    pub radius: usize,
    /// Normal-form words, sorted by shortlex.
    pub vertices: Vec<Vec<i32>>,
    /// `(from, to, label)` with `vertices[from] = label · vertices[to]`.
    pub edges: Vec<(usize, usize, i32)>,
}

impl CayleyGraphBall {
    pub fn vertex_index(&self, word: &[i32]) -> Option<usize> {
        self.vertices.iter().position(|w| w == word)
    }

    /// Undirected adjacency lists (each labeled edge contributes one
    /// unordered adjacency).
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![BTreeSet::new(); self.vertices.len()];
        for &(a, b, _) in &self.edges {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        adj.into_iter().map(|s| s.into_iter().collect()).collect()
    }
}

/// Build the radius-`r` ball of the Cayley graph of `spec` with respect to
/// its standard generators and their inverses.
pub fn cayley_ball(spec: GroupSpec, r: usize) -> Result<CayleyGraphBall, GroupError> {
    let cap = radius_cap();
    if r > cap {
        return Err(GroupError::RadiusCapExceeded { radius: r, cap });
    }
    let k = spec.rank() as i32;
    let letters: Vec<i32> = (1..=k).flat_map(|i| [i, -i]).collect();

    let mut seen: BTreeSet<Vec<i32>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(Vec::new());
    queue.push_back(Vec::new());
    while let Some(w) = queue.pop_front() {
        if w.len() == r {
            continue;
        }
        for &l in &letters {
            let mut next = w.clone();
            next.push(l);
            let nf = spec.normal_form(&next)?;
            if nf.len() <= r && seen.insert(nf.clone()) {
                queue.push_back(nf);
            }
        }
    }

    let mut vertices: Vec<Vec<i32>> = seen.into_iter().collect();
    vertices.sort_by_key(|w| (w.len(), shortlex_key(w)));
    let index: HashMap<&Vec<i32>, usize> =
        vertices.iter().enumerate().map(|(i, w)| (w, i)).collect();

    let mut edges = Vec::new();
    for (j, w) in vertices.iter().enumerate() {
        for &s in &letters {
            let mut g = vec![s];
            g.extend_from_slice(w);
            let nf = spec.normal_form(&g)?;
            if let Some(&i) = index.get(&nf) {
                edges.push((i, j, s));
            }
        }
    }
    Ok(CayleyGraphBall {
        spec,
        radius: r,
        vertices,
        edges,
    })
}

/// Enumerate up to `cap` geodesics (as vertex sequences) from `x` to `y`,
/// walking the BFS-distance DAG toward `y`.
fn enumerate_geodesics(
    adj: &[Vec<usize>],
    dist_to_y: &[u32],
    x: usize,
    y: usize,
    cap: usize,
) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack = vec![vec![x]];
    while let Some(path) = stack.pop() {
        if out.len() >= cap {
            break;
        }
        let cur = *path.last().unwrap();
        if cur == y {
            out.push(path);
            continue;
        }
        for &v in &adj[cur] {
            if dist_to_y[v] + 1 == dist_to_y[cur] {
                let mut next = path.clone();
                next.push(v);
                stack.push(next);
            }
        }
    }
    out
}

fn bfs_distances(adj: &[Vec<usize>], start: usize) -> Vec<u32> {
    let mut dist = vec![u32::MAX; adj.len()];
    dist[start] = 0;
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if dist[w] == u32::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Lower bound on the thinness constant δ of geodesic triangles in the ball,
/// scanning vertex triples in the interior (radius at most `r − 1`) and
/// maximizing over enumerated geodesics.  Exact on trees, where geodesics
/// are unique.
pub fn delta_estimate(ball: &CayleyGraphBall) -> Result<usize, GroupError> {
    let n = ball.vertices.len();
    let adj = ball.adjacency();
    let mut dist = Vec::with_capacity(n);
    for v in 0..n {
        let d = bfs_distances(&adj, v);
        if d.iter().any(|&x| x == u32::MAX) {
            return Err(GroupError::Disconnected);
        }
        dist.push(d);
    }

    let interior: Vec<usize> = (0..n)
        .filter(|&v| ball.vertices[v].len() + 1 <= ball.radius.max(1))
        .collect();
    let cap = geodesic_cap();

    // f(p, {x,y}) = max over enumerated geodesics g from x to y of
    // dist(p, g).  Maximizing the thinness of a triple over independent
    // geodesic choices for its sides reduces to these per-side quantities.
    let mut f_cache: HashMap<(usize, usize, usize), u32> = HashMap::new();
    let mut geodesic_sets: HashMap<(usize, usize), Vec<Vec<usize>>> = HashMap::new();
    let mut f = |p: usize,
                 x: usize,
                 y: usize,
                 geodesic_sets: &mut HashMap<(usize, usize), Vec<Vec<usize>>>|
     -> u32 {
        let key = (x.min(y), x.max(y), p);
        if let Some(&v) = f_cache.get(&key) {
            return v;
        }
        let geos = geodesic_sets
            .entry((key.0, key.1))
            .or_insert_with(|| enumerate_geodesics(&adj, &dist[key.1], key.0, key.1, cap));
        let val = geos
            .iter()
            .map(|g| g.iter().map(|&q| dist[p][q]).min().unwrap())
            .max()
            .unwrap_or(0);
        f_cache.insert(key, val);
        val
    };

    // Vertices lying on some geodesic from x to y.
    let geo_between = |x: usize, y: usize| -> Vec<usize> {
        (0..n)
            .filter(|&p| dist[x][p] + dist[p][y] == dist[x][y])
            .collect()
    };

    let mut delta = 0u32;
    for (a, &x) in interior.iter().enumerate() {
        for (b, &y) in interior.iter().enumerate().skip(a + 1) {
            for &z in interior.iter().skip(b + 1) {
                for (u, v, w) in [(x, y, z), (x, z, y), (y, z, x)] {
                    for p in geo_between(u, v) {
                        let t = f(p, u, w, &mut geodesic_sets)
                            .min(f(p, v, w, &mut geodesic_sets));
                        delta = delta.max(t);
                    }
                }
            }
        }
    }
    Ok(delta as usize)
}
