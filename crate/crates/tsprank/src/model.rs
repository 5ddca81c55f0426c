//! Domain types and the bilinear pairwise scorer.
//!
//! A ranking over `N` entities is represented three ways, with lossless
//! conversions between them:
//!
//! * [`Tour`] — a permutation of entity indices; position `p` means rank `p + 1`.
//! * [`EdgeSelection`] — the set of consecutive-rank edges `(i, j)` meaning
//!   "`j` is ranked immediately after `i`".
//! * rank labels — one integer in `1..=N` per entity.
//!
//! The scorer assigns every ordered pair a gain `s(e_i, e_j) = e_i' W e_j + b`
//! and collects the pairwise gains into an [`AdjacencyMatrix`]; solvers then
//! look for the maximum-gain open path.

use std::collections::BTreeSet;

use ndarray::{Array1, Array2};

use crate::error::{Error, Result, SelectionViolation};
use crate::scalar::Real;

/// Declares whether rank label 1 denotes the best or the worst entity in a
/// dataset's native convention. Loaders normalise to `Ascending` (rank 1 =
/// first tour position).
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum RankOrder {
    Ascending,
    Descending,
}

/// One ranked entity: an opaque id plus its embedding.
#[derive(Debug, Clone, PartialEq)]
pub struct Entity<F: Real> {
    pub id: String,
    pub embedding: Array1<F>,
}

impl<F: Real> Entity<F> {
    pub fn new(id: impl Into<String>, embedding: Array1<F>) -> Self {
        Self {
            id: id.into(),
            embedding,
        }
    }

    pub fn dim(&self) -> usize {
        self.embedding.len()
    }
}

/// One ranking instance: `N` entities with a shared embedding dimension and,
/// when known, gold ranks forming a strict permutation of `1..=N`.
#[derive(Debug, Clone, PartialEq)]
pub struct RankingGroup<F: Real> {
    pub group_id: String,
    pub entities: Vec<Entity<F>>,
    pub gold_ranks: Option<Vec<usize>>,
    pub rank_order: RankOrder,
}

impl<F: Real> RankingGroup<F> {
    /// Builds a group and checks every invariant: nonempty, consistent
    /// dimensions, finite coordinates, and (if present) strict gold ranks.
    pub fn new(
        group_id: impl Into<String>,
        entities: Vec<Entity<F>>,
        gold_ranks: Option<Vec<usize>>,
    ) -> Result<Self> {
        let group_id = group_id.into();
        if entities.is_empty() {
            return Err(Error::InvalidGroup {
                group: group_id,
                reason: "group must contain at least one entity".into(),
            });
        }
        let dim = entities[0].dim();
        if dim == 0 {
            return Err(Error::InvalidGroup {
                group: group_id,
                reason: "embedding dimension must be >= 1".into(),
            });
        }
        for entity in &entities {
            if entity.dim() != dim {
                return Err(Error::InvalidGroup {
                    group: group_id,
                    reason: format!(
                        "entity `{}` has dimension {}, expected {}",
                        entity.id,
                        entity.dim(),
                        dim
                    ),
                });
            }
            if entity.embedding.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidGroup {
                    group: group_id,
                    reason: format!("entity `{}` has a non-finite coordinate", entity.id),
                });
            }
        }
        if let Some(ranks) = &gold_ranks {
            if ranks.len() != entities.len() {
                return Err(Error::InvalidGroup {
                    group: group_id,
                    reason: format!(
                        "{} gold ranks for {} entities",
                        ranks.len(),
                        entities.len()
                    ),
                });
            }
            let mut seen = vec![false; entities.len()];
            for &r in ranks {
                if r == 0 || r > entities.len() {
                    return Err(Error::InvalidGroup {
                        group: group_id,
                        reason: format!("rank {} outside 1..={}", r, entities.len()),
                    });
                }
                if seen[r - 1] {
                    return Err(Error::InvalidGroup {
                        group: group_id,
                        reason: format!("duplicate rank {r} (ties are rejected)"),
                    });
                }
                seen[r - 1] = true;
            }
        }
        Ok(Self {
            group_id,
            entities,
            gold_ranks,
            rank_order: RankOrder::Ascending,
        })
    }

    pub fn len(&self) -> usize {
        self.entities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entities.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.entities[0].dim()
    }

    /// Entity indices sorted by gold rank: element `p` is the entity holding
    /// rank `p + 1`.
    pub fn gold_order(&self) -> Result<Vec<usize>> {
        let ranks = self
            .gold_ranks
            .as_ref()
            .ok_or_else(|| Error::MissingGoldRanks(self.group_id.clone()))?;
        let mut order = vec![0usize; ranks.len()];
        for (entity, &rank) in ranks.iter().enumerate() {
            order[rank - 1] = entity;
        }
        Ok(order)
    }

    /// The gold ranking as a [`Tour`].
    pub fn gold_tour(&self) -> Result<Tour> {
        Tour::new(self.gold_order()?)
    }
}

/// Encoder applied to raw embeddings before bilinear scoring.
#[derive(Debug, Clone, PartialEq)]
pub enum Encoder<F: Real> {
    /// Pass-through; scorer dimension equals the input dimension.
    Identity,
    /// Affine map `h = M x + c` from `d_in` to `d` dimensions.
    Linear { m: Array2<F>, c: Array1<F> },
}

/// Trainable pairwise scorer `s(e_i, e_j) = e_i' W e_j + b` over encoded
/// embeddings.
#[derive(Debug, Clone, PartialEq)]
pub struct BilinearModel<F: Real> {
    pub weight: Array2<F>,
    pub bias: F,
    pub encoder: Encoder<F>,
}

impl<F: Real> BilinearModel<F> {
    /// Identity-encoder model with `W = 0`, `b = 0`.
    pub fn zeros(d: usize) -> Self {
        Self {
            weight: Array2::zeros((d, d)),
            bias: F::zero(),
            encoder: Encoder::Identity,
        }
    }

    /// Linear-encoder model with `M` initialised to a (possibly truncated)
    /// identity, `c = 0`, `W = 0`, `b = 0`.
    pub fn zeros_with_linear_encoder(d_in: usize, d: usize) -> Self {
        let mut m = Array2::zeros((d, d_in));
        for i in 0..d.min(d_in) {
            m[(i, i)] = F::one();
        }
        Self {
            weight: Array2::zeros((d, d)),
            bias: F::zero(),
            encoder: Encoder::Linear {
                m,
                c: Array1::zeros(d),
            },
        }
    }

    pub fn new(weight: Array2<F>, bias: F, encoder: Encoder<F>) -> Result<Self> {
        let model = Self {
            weight,
            bias,
            encoder,
        };
        model.validate()?;
        Ok(model)
    }

    pub fn validate(&self) -> Result<()> {
        let d = self.weight.nrows();
        if self.weight.ncols() != d {
            return Err(Error::DimensionMismatch {
                context: "bilinear weight matrix",
                expected: d,
                got: self.weight.ncols(),
            });
        }
        if self.weight.iter().any(|x| !x.is_finite()) || !self.bias.is_finite() {
            return Err(Error::NonFinite("bilinear parameters"));
        }
        if let Encoder::Linear { m, c } = &self.encoder {
            if m.nrows() != d {
                return Err(Error::DimensionMismatch {
                    context: "encoder output dimension",
                    expected: d,
                    got: m.nrows(),
                });
            }
            if c.len() != d {
                return Err(Error::DimensionMismatch {
                    context: "encoder bias",
                    expected: d,
                    got: c.len(),
                });
            }
            if m.iter().any(|x| !x.is_finite()) || c.iter().any(|x| !x.is_finite()) {
                return Err(Error::NonFinite("encoder parameters"));
            }
        }
        Ok(())
    }

    /// Scorer-space dimension `d`.
    pub fn d(&self) -> usize {
        self.weight.nrows()
    }

    /// Expected dimension of raw input embeddings.
    pub fn input_dim(&self) -> usize {
        match &self.encoder {
            Encoder::Identity => self.d(),
            Encoder::Linear { m, .. } => m.ncols(),
        }
    }

    /// Applies the encoder. Identity returns its input unchanged.
    pub fn encode(&self, raw: &Array1<F>) -> Result<Array1<F>> {
        if raw.len() != self.input_dim() {
            return Err(Error::DimensionMismatch {
                context: "encoder input",
                expected: self.input_dim(),
                got: raw.len(),
            });
        }
        match &self.encoder {
            Encoder::Identity => Ok(raw.clone()),
            Encoder::Linear { m, c } => Ok(m.dot(raw) + c),
        }
    }

    /// Bilinear score of an ordered pair of *encoded* vectors.
    ///
    /// Not symmetric in general: `s(e_i, e_j) != s(e_j, e_i)` unless `W` is
    /// symmetric.
    pub fn score_pair(&self, e_i: &Array1<F>, e_j: &Array1<F>) -> Result<F> {
        let d = self.d();
        if e_i.len() != d {
            return Err(Error::DimensionMismatch {
                context: "score_pair left vector",
                expected: d,
                got: e_i.len(),
            });
        }
        if e_j.len() != d {
            return Err(Error::DimensionMismatch {
                context: "score_pair right vector",
                expected: d,
                got: e_j.len(),
            });
        }
        Ok(e_i.dot(&self.weight.dot(e_j)) + self.bias)
    }
}

/// Dense `N x N` matrix of pairwise gains. Entry `(i, j)` is the gain of
/// ranking entity `j` immediately after entity `i`. The diagonal holds an
/// invalid sentinel (NaN) and is never read by solvers or losses.
#[derive(Debug, Clone, PartialEq)]
pub struct AdjacencyMatrix<F: Real> {
    n: usize,
    values: Array2<F>,
}

impl<F: Real> AdjacencyMatrix<F> {
    /// All off-diagonal entries zero.
    pub fn zeros(n: usize) -> Self {
        let mut values = Array2::zeros((n, n));
        for i in 0..n {
            values[(i, i)] = F::nan();
        }
        Self { n, values }
    }

    /// Builds from a full matrix; the diagonal is overwritten with the
    /// sentinel, off-diagonal entries must be finite.
    pub fn from_values(mut values: Array2<F>) -> Result<Self> {
        let n = values.nrows();
        if values.ncols() != n {
            return Err(Error::DimensionMismatch {
                context: "adjacency matrix",
                expected: n,
                got: values.ncols(),
            });
        }
        if n == 0 {
            return Err(Error::DimensionMismatch {
                context: "adjacency matrix",
                expected: 1,
                got: 0,
            });
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && !values[(i, j)].is_finite() {
                    return Err(Error::NonFinite("adjacency entry"));
                }
            }
        }
        for i in 0..n {
            values[(i, i)] = F::nan();
        }
        Ok(Self { n, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Off-diagonal lookup. Panics (debug) on the sentinel diagonal.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> F {
        debug_assert_ne!(i, j, "the adjacency diagonal is not a valid edge");
        self.values[(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, value: F) {
        assert_ne!(i, j, "the adjacency diagonal is not a valid edge");
        self.values[(i, j)] = value;
    }

    /// Read-only view of the backing matrix (diagonal = NaN sentinel).
    pub fn values(&self) -> &Array2<F> {
        &self.values
    }

    /// Iterates over all ordered off-diagonal pairs `(i, j, a_ij)`.
    pub fn iter_edges(&self) -> impl Iterator<Item = (usize, usize, F)> + '_ {
        (0..self.n).flat_map(move |i| {
            (0..self.n)
                .filter(move |&j| j != i)
                .map(move |j| (i, j, self.values[(i, j)]))
        })
    }

    /// Returns a copy with `delta` added to every off-diagonal entry.
    pub fn shifted(&self, delta: F) -> Self {
        let mut out = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    out.values[(i, j)] = out.values[(i, j)] + delta;
                }
            }
        }
        out
    }
}

/// Computes the pairwise gain matrix for one group: `A[i][j] =
/// score_pair(encode(e_i), encode(e_j))` for all `i != j`.
///
/// Entries are bit-identical to calling [`BilinearModel::score_pair`] on the
/// encoded embeddings: the encoded vectors and `W e_j` products are computed
/// once per entity and the final dot product uses the same expression order.
pub fn build_adjacency<F: Real>(
    model: &BilinearModel<F>,
    group: &RankingGroup<F>,
) -> Result<AdjacencyMatrix<F>> {
    let n = group.len();
    let encoded: Vec<Array1<F>> = group
        .entities
        .iter()
        .map(|e| model.encode(&e.embedding))
        .collect::<Result<_>>()?;
    // Precompute W e_j once per entity; score_pair evaluates the same
    // `e_i . (W e_j) + b` expression, so entries stay bit-exact with it.
    let weighted: Vec<Array1<F>> = encoded.iter().map(|e| model.weight.dot(e)).collect();
    let mut adj = AdjacencyMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let score = encoded[i].dot(&weighted[j]) + model.bias;
            if !score.is_finite() {
                return Err(Error::NonFinite("pairwise score"));
            }
            adj.set(i, j, score);
        }
    }
    Ok(adj)
}

/// A complete ranking as a permutation of entity indices. The entity at
/// position `p` receives rank `p + 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tour {
    order: Vec<usize>,
}

impl Tour {
    /// Validates that `order` is a bijection on `0..n`.
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        let mut seen = vec![false; n];
        for &v in &order {
            if v >= n || seen[v] {
                return Err(Error::InvalidGroup {
                    group: String::new(),
                    reason: format!("tour {order:?} is not a permutation of 0..{n}"),
                });
            }
            seen[v] = true;
        }
        Ok(Self { order })
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Rank labels implied by the tour: entity `order[p]` gets rank `p + 1`.
    pub fn to_ranks(&self) -> Vec<usize> {
        let mut ranks = vec![0usize; self.order.len()];
        for (pos, &entity) in self.order.iter().enumerate() {
            ranks[entity] = pos + 1;
        }
        ranks
    }

    /// The consecutive-pair edge set of the tour.
    pub fn to_edges(&self) -> EdgeSelection {
        let edges = self
            .order
            .windows(2)
            .map(|w| (w[0], w[1]))
            .collect::<BTreeSet<_>>();
        EdgeSelection {
            n: self.order.len(),
            edges,
        }
    }
}

/// A set of directed edges `(i, j)`, each meaning "`j` ranked immediately
/// after `i`". A *valid path* selection has exactly `n - 1` edges forming a
/// single open path over all `n` nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSelection {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl EdgeSelection {
    /// Builds a selection; self-loops and out-of-range nodes are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (i, j) in edges {
            if i == j || i >= n || j >= n {
                return Err(Error::InvalidGroup {
                    group: String::new(),
                    reason: format!("edge ({i}, {j}) invalid for n = {n}"),
                });
            }
            set.insert((i, j));
        }
        Ok(Self { n, edges: set })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&(i, j))
    }

    /// Checks the valid-path invariant, naming the first violated property:
    /// edge count `n - 1`, in/out degree at most one, no cycles, and a single
    /// connected path covering every node.
    pub fn validate_path(&self) -> std::result::Result<(), SelectionViolation> {
        let n = self.n;
        if self.edges.len() != n.saturating_sub(1) {
            return Err(SelectionViolation::EdgeCount {
                expected: n.saturating_sub(1),
                found: self.edges.len(),
            });
        }
        let mut succ = vec![usize::MAX; n];
        let mut in_deg = vec![0usize; n];
        for &(i, j) in &self.edges {
            if succ[i] != usize::MAX {
                return Err(SelectionViolation::OutDegree(i));
            }
            succ[i] = j;
            in_deg[j] += 1;
            if in_deg[j] > 1 {
                return Err(SelectionViolation::InDegree(j));
            }
        }
        if n == 0 {
            return Ok(());
        }
        // With n-1 edges and degrees <= 1 there is exactly one node without a
        // predecessor; following successors must visit every node exactly once.
        let start = match (0..n).find(|&v| in_deg[v] == 0) {
            Some(s) => s,
            None => return Err(SelectionViolation::Cycle),
        };
        let mut visited = 0usize;
        let mut node = start;
        loop {
            visited += 1;
            if visited > n {
                return Err(SelectionViolation::Cycle);
            }
            if succ[node] == usize::MAX {
                break;
            }
            node = succ[node];
        }
        if visited != n {
            return Err(SelectionViolation::Disconnected);
        }
        Ok(())
    }

    /// Converts a valid-path selection into the tour it encodes.
    pub fn to_tour(&self) -> Result<Tour> {
        self.validate_path()?;
        if self.n == 0 {
            return Tour::new(vec![]);
        }
        let mut succ = vec![usize::MAX; self.n];
        let mut has_pred = vec![false; self.n];
        for &(i, j) in &self.edges {
            succ[i] = j;
            has_pred[j] = true;
        }
        let start = (0..self.n)
            .find(|&v| !has_pred[v])
            .expect("valid path has a start node");
        let mut order = Vec::with_capacity(self.n);
        let mut node = start;
        loop {
            order.push(node);
            if succ[node] == usize::MAX {
                break;
            }
            node = succ[node];
        }
        Tour::new(order)
    }
}

/// Total gain of a tour: the sum of its `n - 1` consecutive-edge weights
/// (zero for a single node).
pub fn tour_score<F: Real>(adj: &AdjacencyMatrix<F>, tour: &Tour) -> Result<F> {
    if tour.len() != adj.n() {
        return Err(Error::DimensionMismatch {
            context: "tour length",
            expected: adj.n(),
            got: tour.len(),
        });
    }
    let mut total = F::zero();
    for w in tour.order().windows(2) {
        total = total + adj.get(w[0], w[1]);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::{arr1, arr2};

    fn group_of(embeddings: &[Vec<f64>]) -> RankingGroup<f64> {
        let entities = embeddings
            .iter()
            .enumerate()
            .map(|(i, e)| Entity::new(format!("e{i}"), Array1::from_vec(e.clone())))
            .collect();
        RankingGroup::new("g", entities, None).unwrap()
    }

    #[test]
    fn encode_identity_passes_through() {
        let model = BilinearModel::<f64>::zeros(2);
        let raw = arr1(&[1.5, -2.0]);
        assert_eq!(model.encode(&raw).unwrap(), raw);
    }

    #[test]
    fn encode_linear_identity_parameters() {
        let model = BilinearModel::new(
            Array2::zeros((2, 2)),
            0.0,
            Encoder::Linear {
                m: arr2(&[[1.0, 0.0], [0.0, 1.0]]),
                c: arr1(&[0.0, 0.0]),
            },
        )
        .unwrap();
        assert_eq!(model.encode(&arr1(&[3.0, 4.0])).unwrap(), arr1(&[3.0, 4.0]));
    }

    #[test]
    fn encode_linear_matches_dense_multiply_oracle() {
        let m = arr2(&[[0.0, 1.0], [1.0, 0.0]]);
        let c = arr1(&[1.0, 1.0]);
        let raw = arr1(&[3.0, 4.0]);
        // Independent dense multiply.
        let mut expected = vec![0.0; 2];
        for (i, e) in expected.iter_mut().enumerate() {
            for k in 0..2 {
                *e += m[(i, k)] * raw[k];
            }
            *e += c[i];
        }
        let model =
            BilinearModel::new(Array2::zeros((2, 2)), 0.0, Encoder::Linear { m, c }).unwrap();
        assert_eq!(
            model.encode(&raw).unwrap(),
            Array1::from_vec(expected.clone())
        );
        assert_eq!(expected, vec![5.0, 4.0]);
    }

    #[test]
    fn encode_rejects_dimension_mismatch() {
        let model = BilinearModel::<f64>::zeros(2);
        assert!(matches!(
            model.encode(&arr1(&[1.0, 2.0, 3.0])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn score_pair_orthogonal_under_identity() {
        let model = BilinearModel::new(
            arr2(&[[1.0, 0.0], [0.0, 1.0]]),
            0.0,
            Encoder::Identity,
        )
        .unwrap();
        let s = model
            .score_pair(&arr1(&[1.0, 0.0]), &arr1(&[0.0, 1.0]))
            .unwrap();
        assert_eq!(s, 0.0);
        let s = model
            .score_pair(&arr1(&[1.0, 1.0]), &arr1(&[1.0, 1.0]))
            .unwrap();
        assert_eq!(s, 2.0);
    }

    #[test]
    fn score_pair_matches_dense_bilinear_oracle() {
        let w = arr2(&[[1.0, 2.0], [3.0, 4.0]]);
        let e_i = arr1(&[1.0, 0.0]);
        let e_j = arr1(&[0.0, 1.0]);
        // Independent double-loop bilinear form.
        let mut expected = 0.5;
        for a in 0..2 {
            for b in 0..2 {
                expected += e_i[a] * w[(a, b)] * e_j[b];
            }
        }
        let model = BilinearModel::new(w, 0.5, Encoder::Identity).unwrap();
        assert_eq!(model.score_pair(&e_i, &e_j).unwrap(), expected);
        assert_eq!(expected, 2.5);
    }

    #[test]
    fn score_pair_not_symmetric_in_general() {
        let model =
            BilinearModel::new(arr2(&[[0.0, 2.0], [-1.0, 0.0]]), 0.0, Encoder::Identity).unwrap();
        let a = arr1(&[1.0, 0.0]);
        let b = arr1(&[0.0, 1.0]);
        assert_ne!(
            model.score_pair(&a, &b).unwrap(),
            model.score_pair(&b, &a).unwrap()
        );
    }

    #[test]
    fn score_pair_linear_in_weight() {
        let w = arr2(&[[0.3, -1.2], [2.0, 0.7]]);
        let e_i = arr1(&[0.4, -0.9]);
        let e_j = arr1(&[1.3, 0.2]);
        let base = BilinearModel::new(w.clone(), 0.0, Encoder::Identity).unwrap();
        let alpha = 3.75;
        let scaled = BilinearModel::new(w * alpha, 0.0, Encoder::Identity).unwrap();
        let s0 = base.score_pair(&e_i, &e_j).unwrap();
        let s1 = scaled.score_pair(&e_i, &e_j).unwrap();
        assert!((s1 - alpha * s0).abs() <= 1e-12 * s1.abs().max(1.0));
    }

    #[test]
    fn build_adjacency_single_entity_has_only_sentinel() {
        let model = BilinearModel::<f64>::zeros(2);
        let group = group_of(&[vec![1.0, 2.0]]);
        let adj = build_adjacency(&model, &group).unwrap();
        assert_eq!(adj.n(), 1);
        assert!(adj.values()[(0, 0)].is_nan());
    }

    #[test]
    fn build_adjacency_orthogonal_pair() {
        let model =
            BilinearModel::new(arr2(&[[1.0, 0.0], [0.0, 1.0]]), 0.0, Encoder::Identity).unwrap();
        let group = group_of(&[vec![1.0, 0.0], vec![0.0, 1.0]]);
        let adj = build_adjacency(&model, &group).unwrap();
        assert_eq!(adj.get(0, 1), 0.0);
        assert_eq!(adj.get(1, 0), 0.0);
    }

    #[test]
    fn build_adjacency_matches_score_pair_entrywise() {
        let w = arr2(&[
            [0.11, -0.52, 0.93],
            [1.4, 0.35, -0.76],
            [-0.27, 0.68, 0.19],
        ]);
        let model = BilinearModel::new(w, -0.4, Encoder::Identity).unwrap();
        let group = group_of(&[
            vec![0.5, -1.0, 2.0],
            vec![1.5, 0.25, -0.75],
            vec![-2.0, 1.0, 0.5],
        ]);
        let adj = build_adjacency(&model, &group).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                if i == j {
                    continue;
                }
                let s = model
                    .score_pair(&group.entities[i].embedding, &group.entities[j].embedding)
                    .unwrap();
                // Bit-exact agreement, not merely approximate.
                assert_eq!(adj.get(i, j), s, "entry ({i}, {j})");
            }
        }
    }

    #[test]
    fn tour_to_ranks_identity_and_singleton() {
        assert_eq!(Tour::new(vec![0, 1, 2]).unwrap().to_ranks(), vec![1, 2, 3]);
        assert_eq!(Tour::new(vec![0]).unwrap().to_ranks(), vec![1]);
    }

    #[test]
    fn tour_to_ranks_matches_inverse_permutation_oracle() {
        let tour = Tour::new(vec![2, 0, 1]).unwrap();
        let ranks = tour.to_ranks();
        // Oracle: rank of entity e is 1 + its position in the order.
        for (entity, &rank) in ranks.iter().enumerate() {
            let pos = tour.order().iter().position(|&v| v == entity).unwrap();
            assert_eq!(rank, pos + 1);
        }
        assert_eq!(ranks, vec![2, 3, 1]);
    }

    #[test]
    fn edges_to_tour_follows_chain() {
        let sel = EdgeSelection::new(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(sel.to_tour().unwrap().order(), &[0, 1, 2]);

        let sel = EdgeSelection::new(3, [(2, 0), (0, 1)]).unwrap();
        assert_eq!(sel.to_tour().unwrap().order(), &[2, 0, 1]);
    }

    #[test]
    fn edges_to_tour_rejects_two_cycle() {
        let sel = EdgeSelection::new(2, [(0, 1), (1, 0)]).unwrap();
        match sel.to_tour() {
            Err(Error::InvalidSelection(v)) => {
                assert!(matches!(
                    v,
                    SelectionViolation::Cycle | SelectionViolation::EdgeCount { .. }
                ));
            }
            other => panic!("expected invalid-selection error, got {other:?}"),
        }
    }

    #[test]
    fn validate_path_names_the_violation() {
        let sel = EdgeSelection::new(4, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(
            sel.validate_path(),
            Err(SelectionViolation::OutDegree(0))
        );

        let sel = EdgeSelection::new(4, [(0, 2), (1, 2), (2, 3)]).unwrap();
        assert_eq!(sel.validate_path(), Err(SelectionViolation::InDegree(2)));

        // One 3-cycle plus an isolated node: count is right, shape is not.
        let sel = EdgeSelection::new(4, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(sel.validate_path(), Err(SelectionViolation::Cycle));

        let sel = EdgeSelection::new(1, []).unwrap();
        assert_eq!(sel.validate_path(), Ok(()));
    }

    #[test]
    fn tour_edges_round_trip() {
        let tour = Tour::new(vec![3, 1, 0, 2]).unwrap();
        assert_eq!(tour.to_edges().to_tour().unwrap(), tour);
    }

    #[test]
    fn tour_score_empty_and_single_edge() {
        let adj = AdjacencyMatrix::<f64>::zeros(1);
        assert_eq!(tour_score(&adj, &Tour::new(vec![0]).unwrap()).unwrap(), 0.0);

        let mut adj = AdjacencyMatrix::zeros(2);
        adj.set(0, 1, 5.0);
        adj.set(1, 0, 3.0);
        assert_eq!(
            tour_score(&adj, &Tour::new(vec![0, 1]).unwrap()).unwrap(),
            5.0
        );
    }

    #[test]
    fn tour_score_matches_resummation_oracle() {
        let mut adj = AdjacencyMatrix::zeros(3);
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    adj.set(i, j, (i * 3 + j) as f64 * 0.37 - 1.0);
                }
            }
        }
        let tour = Tour::new(vec![2, 0, 1]).unwrap();
        let expected = adj.get(2, 0) + adj.get(0, 1);
        assert_eq!(tour_score(&adj, &tour).unwrap(), expected);
    }

    #[test]
    fn group_rejects_tied_ranks() {
        let entities = vec![
            Entity::new("a", arr1(&[1.0])),
            Entity::new("b", arr1(&[2.0])),
        ];
        assert!(RankingGroup::new("g", entities, Some(vec![1, 1])).is_err());
    }

    #[test]
    fn group_rejects_mixed_dimensions() {
        let entities = vec![
            Entity::new("a", arr1(&[1.0])),
            Entity::new("b", arr1(&[2.0, 3.0])),
        ];
        assert!(RankingGroup::new("g", entities, None).is_err());
    }
}
