//! Slenderness witnesses: an exponent `j` and, for each `g != e`, a
//! divisibility sequence `p_m` such that the cascade `y_m = g^j·y_{m+1}^{k_m}`
//! has no solution whenever `p_m | k_m`. Some witnesses also bound the depth
//! `M` at which a truncated cascade with a given `b_0` already fails.
//!
//! Combinators need the child witness at `g^j` or `q(g^j)`, so they consume
//! [`WitnessFactory`] values, which build a witness for each element.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::Serialize;
use thiserror::Error;

use crate::gp::{GPElement, GpError, GraphProduct};
use crate::group::Group;
use crate::vertex::Integers;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WitnessError {
    #[error("witnesses are only defined for non-identity elements")]
    Identity,
    #[error("p_{m} = {p} does not divide k_{m} = {k}")]
    NotDivisible { m: usize, p: u64, k: u64 },
    #[error("need {needed} exponents, got {got}")]
    KTooShort { needed: usize, got: usize },
    #[error("certificates need a dudley witness")]
    NotDudley,
    #[error("witness domain mismatch: {0}")]
    DomainMismatch(&'static str),
    #[error("bounded exponent d must be at least 1")]
    ZeroExponent,
    #[error("expected {expected} vertex witnesses, got {got}")]
    VertexCount { expected: usize, got: usize },
    #[error(transparent)]
    Gp(#[from] GpError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Dudley,
    FiniteRoots,
    Extension,
    BoundedExponent,
    GraphProduct,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Dudley => "dudley",
            Method::FiniteRoots => "finite-roots",
            Method::Extension => "extension",
            Method::BoundedExponent => "bounded-exponent",
            Method::GraphProduct => "graph-product",
        })
    }
}

pub type Norm<E> = Arc<dyn Fn(&E) -> u64 + Send + Sync>;
pub type PSequence = Arc<dyn Fn(usize) -> u64 + Send + Sync>;
pub type DepthBound<E> = Arc<dyn Fn(&E) -> u64 + Send + Sync>;

/// A witness for one element `g`.
#[derive(Clone)]
pub struct SlendernessWitness<E> {
    g: E,
    j: u64,
    method: Method,
    p: PSequence,
    depth_bound: Option<DepthBound<E>>,
    norm: Option<Norm<E>>,
}

impl<E> SlendernessWitness<E> {
    pub fn g(&self) -> &E {
        &self.g
    }

    pub fn j(&self) -> u64 {
        self.j
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn p(&self, m: usize) -> u64 {
        (self.p)(m)
    }

    /// `p_0, …, p_{n-1}`.
    pub fn p_prefix(&self, n: usize) -> Vec<u64> {
        (0..n).map(|m| self.p(m)).collect()
    }

    pub fn has_depth_bound(&self) -> bool {
        self.depth_bound.is_some()
    }

    pub fn depth_bound(&self, b0: &E) -> Option<u64> {
        self.depth_bound.as_ref().map(|f| f(b0))
    }

    fn relabel(mut self, method: Method) -> Self {
        self.method = method;
        self
    }
}

impl<E: fmt::Debug> fmt::Debug for SlendernessWitness<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SlendernessWitness")
            .field("g", &self.g)
            .field("j", &self.j)
            .field("method", &self.method)
            .field("p", &self.p_prefix(4))
            .field("depth_bound", &self.depth_bound.is_some())
            .finish()
    }
}

type Build<E> = Arc<dyn Fn(&E) -> Result<SlendernessWitness<E>, WitnessError> + Send + Sync>;

/// A uniform `j` together with a witness for every `g != e`.
pub struct WitnessFactory<E> {
    j: u64,
    method: Method,
    build: Build<E>,
}

impl<E> Clone for WitnessFactory<E> {
    fn clone(&self) -> Self {
        Self {
            j: self.j,
            method: self.method,
            build: Arc::clone(&self.build),
        }
    }
}

impl<E> WitnessFactory<E> {
    pub fn j(&self) -> u64 {
        self.j
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn witness(&self, g: &E) -> Result<SlendernessWitness<E>, WitnessError> {
        (self.build)(g)
    }
}

impl<E> fmt::Debug for WitnessFactory<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WitnessFactory")
            .field("j", &self.j)
            .field("method", &self.method)
            .finish()
    }
}

/// `j = 1`, `p_m = (m+2)(L(g)+1)` and depth bound `L(b_0) + 1`.
pub fn dudley_witness<G: Group>(
    group: &G,
    norm: Norm<G::Element>,
    g: &G::Element,
) -> Result<SlendernessWitness<G::Element>, WitnessError>
where
    G::Element: Send + Sync + 'static,
{
    if *g == group.identity() {
        return Err(WitnessError::Identity);
    }
    let lg = norm(g);
    let depth_norm = Arc::clone(&norm);
    Ok(SlendernessWitness {
        g: g.clone(),
        j: 1,
        method: Method::Dudley,
        p: Arc::new(move |m| (m as u64 + 2) * (lg + 1)),
        depth_bound: Some(Arc::new(move |b0| depth_norm(b0) + 1)),
        norm: Some(norm),
    })
}

pub fn dudley_factory<G>(group: Arc<G>, norm: Norm<G::Element>) -> WitnessFactory<G::Element>
where
    G: Group + Send + Sync + 'static,
    G::Element: Send + Sync + 'static,
{
    WitnessFactory {
        j: 1,
        method: Method::Dudley,
        build: Arc::new(move |g| dudley_witness(group.as_ref(), Arc::clone(&norm), g)),
    }
}

/// Checkable record of why `y_m = g·y_{m+1}^{k_m}`, `0 <= m <= M`, has no
/// solution starting at `b_0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RefutationCertificate {
    pub g: String,
    pub b0: String,
    pub j: u64,
    pub k: Vec<u64>,
    #[serde(rename = "M")]
    pub depth: u64,
    #[serde(rename = "Lg")]
    pub lg: u64,
    #[serde(rename = "Lb0")]
    pub lb0: u64,
    #[serde(rename = "LB")]
    pub lower_bound: u64,
    pub valid: bool,
}

impl RefutationCertificate {
    /// Re-derives every inequality from the recorded integers alone.
    pub fn check(&self) -> bool {
        let (depth, lg, lb0) = (self.depth as u128, self.lg as u128, self.lb0 as u128);
        if self.j != 1 || depth != lb0 + 1 || self.k.len() as u128 != depth + 1 {
            return false;
        }
        let divisible = self.k.iter().enumerate().all(|(m, &k)| {
            let p = (m as u128 + 2) * (lg + 1);
            k > 0 && (k as u128).is_multiple_of(p)
        });
        let target = (depth + 1) * (lg + 1);
        let m = self.depth as usize;
        let trivial_tail = self.k[m - 1] as u128 >= target;
        let nontrivial_tail = (self.k[m] as u128) >= lg + target;
        // L(b_0) >= L(b_M^{k_{M-1}}) - M·L(g)
        let chain = target - depth * lg;
        divisible
            && trivial_tail
            && nontrivial_tail
            && chain == self.lower_bound as u128
            && chain > lb0
    }

    /// Single-line JSON with keys in sorted order.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("certificate serializes");
        serde_json::to_string(&value).expect("json value serializes")
    }
}

/// Builds the certificate for `b_0` at the witness's depth bound, using the
/// first `M + 1` entries of `k`.
pub fn refutation_certificate<G: Group>(
    group: &G,
    witness: &SlendernessWitness<G::Element>,
    g: &G::Element,
    b0: &G::Element,
    k: &[u64],
) -> Result<RefutationCertificate, WitnessError> {
    let norm = match (&witness.norm, witness.method) {
        (Some(norm), Method::Dudley) => norm,
        _ => return Err(WitnessError::NotDudley),
    };
    if witness.g != *g {
        return Err(WitnessError::DomainMismatch("witness was built for another element"));
    }
    let lg = norm(g);
    let lb0 = norm(b0);
    let depth = witness.depth_bound(b0).expect("dudley witnesses carry a depth bound");
    let needed = depth as usize + 1;
    if k.len() < needed {
        return Err(WitnessError::KTooShort { needed, got: k.len() });
    }
    for (m, &km) in k[..needed].iter().enumerate() {
        let p = witness.p(m);
        if km == 0 || km % p != 0 {
            return Err(WitnessError::NotDivisible { m, p, k: km });
        }
    }
    let lower_bound = (depth + 1) * (lg + 1) - depth * lg;
    let mut certificate = RefutationCertificate {
        g: group.render(g),
        b0: group.render(b0),
        j: witness.j,
        k: k[..needed].to_vec(),
        depth,
        lg,
        lb0,
        lower_bound,
        valid: false,
    };
    certificate.valid = certificate.check();
    Ok(certificate)
}

/// Checks a certificate against fresh norm evaluations of `g` and `b_0`.
pub fn check_certificate<G: Group>(
    group: &G,
    norm: &dyn Fn(&G::Element) -> u64,
    g: &G::Element,
    b0: &G::Element,
    certificate: &RefutationCertificate,
) -> bool {
    certificate.g == group.render(g)
        && certificate.b0 == group.render(b0)
        && certificate.lg == norm(g)
        && certificate.lb0 == norm(b0)
        && certificate.check()
}

impl GraphProduct {
    /// [`dudley_witness`] for the graph-product norm.
    pub fn dudley_witness(&self, g: &GPElement) -> Result<SlendernessWitness<GPElement>, WitnessError> {
        self.require_norm()?;
        let gp = self.clone();
        dudley_witness(self, Arc::new(move |a| gp.dudley_norm(a).expect("norm checked")), g)
    }

    /// Witness read off the ball enumeration `g_0, g_1, …`: with `X_m` its
    /// first `m + 1` elements, `p_m` is the power-free bound of the iterated
    /// root closure of `X_m`, and `b_0 = g_l` gets depth bound `l + 1`.
    pub fn finite_roots_witness(&self, g: &GPElement) -> Result<SlendernessWitness<GPElement>, WitnessError> {
        self.require_norm()?;
        if g.is_identity() {
            return Err(WitnessError::Identity);
        }
        let gp = self.clone();
        let target = g.clone();
        let memo: Mutex<HashMap<usize, u64>> = Mutex::new(HashMap::new());
        let p: PSequence = Arc::new(move |m| {
            if let Some(&p) = memo.lock().expect("memo poisoned").get(&m) {
                return p;
            }
            let xs = gp.enumeration_prefix(m + 1);
            let closure = gp.roots_closure(&target, &xs, m).expect("norm checked");
            let p = gp.power_free_bound(&closure).expect("norm checked");
            memo.lock().expect("memo poisoned").insert(m, p);
            p
        });
        let gp = self.clone();
        let depth_bound: DepthBound<GPElement> = Arc::new(move |b0| gp.enumeration_index(b0) as u64 + 1);
        Ok(SlendernessWitness {
            g: g.clone(),
            j: 1,
            method: Method::FiniteRoots,
            p,
            depth_bound: Some(depth_bound),
            norm: None,
        })
    }

    /// The first `n` elements in `(norm, serialization)` order.
    pub fn enumeration_prefix(&self, n: usize) -> Vec<GPElement> {
        let mut radius = 0;
        loop {
            let ball = self.ball_cached(radius).expect("norm checked");
            let within = ball.within(radius);
            if within.len() >= n {
                return within[..n].iter().map(|e| e.element.clone()).collect();
            }
            radius += 1;
        }
    }

    /// Position of `a` in the `(norm, serialization)` enumeration.
    pub fn enumeration_index(&self, a: &GPElement) -> usize {
        let norm = self.dudley_norm(a).expect("norm checked");
        let ball = self.ball_cached(norm).expect("norm checked");
        ball.index_of(a, norm, &self.render(a))
            .expect("every element of norm r lies in the ball of radius r")
    }
}

pub type Map<A, B> = Arc<dyn Fn(&A) -> B + Send + Sync>;
pub type PowerMap<E> = Arc<dyn Fn(&E, u64) -> E + Send + Sync>;

/// A short exact sequence `1 -> N -> G -> Q -> 1` given by maps on elements.
pub struct Extension<E, N, Q> {
    pub power: PowerMap<E>,
    pub is_identity: Map<E, bool>,
    pub quotient: Map<E, Q>,
    pub quotient_is_identity: Map<Q, bool>,
    /// The preimage in `N` of an element with trivial quotient.
    pub kernel: Map<E, Option<N>>,
}

/// `j = j_Q·j_N`. Off the kernel the witness of `q(g^j)` is pulled back,
/// depth bound included; on the kernel `p_m = (m+1)·p'_m` with `p'` from the
/// witness of `g^j` in `N`, and no depth bound.
pub fn extension_witness<E, N, Q>(
    w_n: &WitnessFactory<N>,
    w_q: &WitnessFactory<Q>,
    ses: Extension<E, N, Q>,
) -> WitnessFactory<E>
where
    E: Clone + Send + Sync + 'static,
    N: 'static,
    Q: 'static,
{
    let j = w_q.j * w_n.j;
    let (w_n, w_q) = (w_n.clone(), w_q.clone());
    let build: Build<E> = Arc::new(move |g: &E| {
        if (ses.is_identity)(g) {
            return Err(WitnessError::Identity);
        }
        let gj = (ses.power)(g, j);
        if !(ses.quotient_is_identity)(&(ses.quotient)(g)) {
            let qgj = (ses.quotient)(&gj);
            if (ses.quotient_is_identity)(&qgj) {
                return Err(WitnessError::DomainMismatch("quotient has torsion"));
            }
            let inner = w_q.witness(&qgj)?;
            let quotient = Arc::clone(&ses.quotient);
            let depth_bound = inner.depth_bound.clone().map(|f| {
                let quotient = Arc::clone(&quotient);
                Arc::new(move |b0: &E| f(&quotient(b0))) as DepthBound<E>
            });
            return Ok(SlendernessWitness {
                g: g.clone(),
                j,
                method: Method::Extension,
                p: inner.p,
                depth_bound,
                norm: None,
            });
        }
        let n = (ses.kernel)(&gj).ok_or(WitnessError::DomainMismatch("element is not in the kernel"))?;
        let inner = w_n.witness(&n)?;
        let p_inner = inner.p;
        Ok(SlendernessWitness {
            g: g.clone(),
            j,
            method: Method::Extension,
            p: Arc::new(move |m| (m as u64 + 1) * p_inner(m)),
            depth_bound: None,
            norm: None,
        })
    });
    WitnessFactory {
        j,
        method: Method::Extension,
        build,
    }
}

/// `G = A × B` with `N = A` and quotient the projection to `B`.
pub fn direct_product_witness<A, B>(
    a: Arc<A>,
    b: Arc<B>,
    w_n: &WitnessFactory<A::Element>,
    w_q: &WitnessFactory<B::Element>,
) -> WitnessFactory<(A::Element, B::Element)>
where
    A: Group + Send + Sync + 'static,
    B: Group + Send + Sync + 'static,
    A::Element: Send + Sync + 'static,
    B::Element: Send + Sync + 'static,
{
    let (a1, a2) = (Arc::clone(&a), a);
    let (b1, b2, b3) = (Arc::clone(&b), Arc::clone(&b), Arc::clone(&b));
    let ses = Extension {
        power: Arc::new(move |(x, y): &(A::Element, B::Element), n| (a1.power(x, n as i64), b1.power(y, n as i64))),
        is_identity: Arc::new(move |(x, y)| *x == a2.identity() && *y == b2.identity()),
        quotient: Arc::new(|(_, y)| y.clone()),
        quotient_is_identity: Arc::new(move |y| *y == b3.identity()),
        kernel: Arc::new(move |(x, y)| (*y == b.identity()).then(|| x.clone())),
    };
    extension_witness(w_n, w_q, ses)
}

/// `j = j_N·d` and `p_m = d·p'_m` for an extension of `N` by a group of
/// exponent `d`; the depth bound of `w_n` carries over.
pub fn bounded_exponent_extension_witness<E: Clone>(
    w_n: &SlendernessWitness<E>,
    d: u64,
) -> Result<SlendernessWitness<E>, WitnessError> {
    if d == 0 {
        return Err(WitnessError::ZeroExponent);
    }
    let inner = Arc::clone(&w_n.p);
    Ok(SlendernessWitness {
        g: w_n.g.clone(),
        j: w_n.j * d,
        method: Method::BoundedExponent,
        p: Arc::new(move |m| d * inner(m)),
        depth_bound: w_n.depth_bound.clone(),
        norm: None,
    })
}

/// Extension witness of `1 -> ker sigma -> G -> ⊕G_v -> 1`, where the kernel
/// is normed by syllable count and the direct sum is built up one vertex at a
/// time in declaration order.
pub fn graph_product_witness(
    gp: &GraphProduct,
    vertex_witnesses: &[WitnessFactory<i64>],
) -> Result<WitnessFactory<GPElement>, WitnessError> {
    let rank = gp.rank();
    if rank == 0 {
        return Err(GpError::EmptyGraph.into());
    }
    gp.require_norm()?;
    if vertex_witnesses.len() != rank {
        return Err(WitnessError::VertexCount {
            expected: rank,
            got: vertex_witnesses.len(),
        });
    }
    let direct_sum = direct_sum_witness(rank, vertex_witnesses);

    let kernel_gp = Arc::new(gp.clone());
    let norm_gp = Arc::clone(&kernel_gp);
    let kernel_norm: Norm<GPElement> =
        Arc::new(move |a| norm_gp.kernel_sigma_norm(a).expect("kernel witnesses see kernel elements"));
    let w_n = dudley_factory(kernel_gp, kernel_norm);

    let (g1, g2, g3) = (gp.clone(), gp.clone(), gp.clone());
    let ses = Extension {
        power: Arc::new(move |a: &GPElement, n| g1.power(a, n as i64)),
        is_identity: Arc::new(|a: &GPElement| a.is_identity()),
        quotient: Arc::new(move |a| g2.sigma(a)),
        quotient_is_identity: Arc::new(|s: &Vec<i64>| s.iter().all(|&x| x == 0)),
        kernel: Arc::new(move |a| g3.in_kernel_of_sigma(a).then(|| a.clone())),
    };
    let inner = extension_witness(&w_n, &direct_sum, ses);
    Ok(WitnessFactory {
        j: inner.j,
        method: Method::GraphProduct,
        build: Arc::new(move |g| inner.witness(g).map(|w| w.relabel(Method::GraphProduct))),
    })
}

impl GraphProduct {
    /// [`graph_product_witness`] with the absolute-value dudley witness at
    /// every vertex.
    pub fn graph_product_witness(&self) -> Result<WitnessFactory<GPElement>, WitnessError> {
        let z = dudley_factory(Arc::new(Integers), Arc::new(|x: &i64| x.unsigned_abs()));
        graph_product_witness(self, &vec![z; self.rank()])
    }
}

/// Witness for `⊕_{v < rank} G_v` on exponent vectors: stage `i` extends
/// stage `i - 1` (the kernel) by `G_i` (the quotient, coordinate `i`).
fn direct_sum_witness(rank: usize, vertex: &[WitnessFactory<i64>]) -> WitnessFactory<Vec<i64>> {
    let first = vertex[0].clone();
    let mut stage = WitnessFactory {
        j: first.j,
        method: first.method,
        build: Arc::new(move |v: &Vec<i64>| {
            if v.iter().skip(1).any(|&x| x != 0) {
                return Err(WitnessError::DomainMismatch("support outside the first vertex"));
            }
            first.witness(&v[0]).map(|w| pull_back(w, v.clone(), Arc::new(|u: &Vec<i64>| u[0])))
        }),
    };
    for (i, w_q) in vertex.iter().enumerate().skip(1) {
        let ses = Extension {
            power: Arc::new(|v: &Vec<i64>, n| v.iter().map(|&x| x * n as i64).collect()),
            is_identity: Arc::new(|v: &Vec<i64>| v.iter().all(|&x| x == 0)),
            quotient: Arc::new(move |v: &Vec<i64>| v[i]),
            quotient_is_identity: Arc::new(|&x: &i64| x == 0),
            kernel: Arc::new(move |v: &Vec<i64>| (v[i] == 0).then(|| v.clone())),
        };
        stage = extension_witness(&stage, w_q, ses);
    }
    debug_assert!(rank == vertex.len());
    stage
}

fn pull_back<E, F>(w: SlendernessWitness<E>, g: F, f: Arc<dyn Fn(&F) -> E + Send + Sync>) -> SlendernessWitness<F>
where
    E: 'static,
    F: 'static,
{
    let depth_bound = w.depth_bound.map(|d| {
        let f = Arc::clone(&f);
        Arc::new(move |b0: &F| d(&f(b0))) as DepthBound<F>
    });
    let norm = w.norm.map(|n| {
        let f = Arc::clone(&f);
        Arc::new(move |x: &F| n(&f(x))) as Norm<F>
    });
    SlendernessWitness {
        g,
        j: w.j,
        method: w.method,
        p: w.p,
        depth_bound,
        norm,
    }
}
