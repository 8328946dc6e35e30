//! Seed-deterministic constructors for the benchmark instance families.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::GenerateError;
use crate::graph::{Graph, Vertex};

/// Average-degree tolerance when searching for a `randomN_d` instance.
pub const DEGREE_TOLERANCE: f64 = 0.1;
/// Seeds tried before giving up on a degree target.
pub const DEGREE_SEED_ATTEMPTS: u64 = 10_000;

/// Grid graph `P_rows □ P_cols`; vertex `(i, j)` has id `i * cols + j`.
pub fn grid(rows: usize, cols: usize) -> Result<Graph, GenerateError> {
    if rows == 0 || cols == 0 {
        return Err(GenerateError::InvalidParameter(format!(
            "grid dimensions must be positive, got {rows}x{cols}"
        )));
    }
    let id = |i: usize, j: usize| i * cols + j;
    let mut edges = Vec::with_capacity(2 * rows * cols);
    for i in 0..rows {
        for j in 0..cols {
            if j + 1 < cols {
                edges.push((id(i, j), id(i, j + 1)));
            }
            if i + 1 < rows {
                edges.push((id(i, j), id(i + 1, j)));
            }
        }
    }
    Ok(Graph::new(rows * cols, edges)?)
}

/// Isaacs flower snark `J(k)`: 3-regular on `4k` vertices.
///
/// Ids: `A_i = i`, `B_i = k + i`, `C_i = 2k + i`, `D_i = 3k + i`. Each hub
/// `B_i` joins `A_i`, `C_i`, `D_i`; the `A_i` form a k-cycle; the `C_i`
/// followed by the `D_i` form one 2k-cycle.
pub fn flower_snark(k: usize) -> Result<Graph, GenerateError> {
    if k < 3 {
        return Err(GenerateError::InvalidParameter(format!(
            "flower snark needs k >= 3, got {k}"
        )));
    }
    let (a, b, c, d) = (0, k, 2 * k, 3 * k);
    let mut edges = Vec::with_capacity(6 * k);
    for i in 0..k {
        let next = (i + 1) % k;
        edges.push((b + i, a + i));
        edges.push((b + i, c + i));
        edges.push((b + i, d + i));
        edges.push((a + i, a + next));
        if i + 1 < k {
            edges.push((c + i, c + i + 1));
            edges.push((d + i, d + i + 1));
        }
    }
    edges.push((c + k - 1, d));
    edges.push((d + k - 1, c));
    Ok(Graph::new(4 * k, edges)?)
}

/// A unit disk graph together with the points that generated it.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitDisk {
    pub graph: Graph,
    pub points: Vec<(f64, f64)>,
}

/// `points` uniform points in `[0, width] × [0, height]`, joined when at most
/// `2 * radius` apart. Disconnected samples are rejected.
pub fn unit_disk(
    points: usize,
    radius: f64,
    width: f64,
    height: f64,
    seed: u64,
) -> Result<UnitDisk, GenerateError> {
    if points == 0 || ![radius, width, height].iter().all(|&x| x > 0.0) {
        return Err(GenerateError::InvalidParameter(format!(
            "unit disk parameters must be positive (c={points}, r={radius}, {width}x{height})"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coords: Vec<(f64, f64)> = (0..points)
        .map(|_| (rng.gen::<f64>() * width, rng.gen::<f64>() * height))
        .collect();

    let reach = 4.0 * radius * radius;
    let mut edges = Vec::new();
    for u in 0..points {
        for v in u + 1..points {
            let dx = coords[u].0 - coords[v].0;
            let dy = coords[u].1 - coords[v].1;
            if dx * dx + dy * dy <= reach {
                edges.push((u, v));
            }
        }
    }
    let graph = Graph::new(points, edges)?;
    if !graph.is_connected() {
        return Err(GenerateError::Disconnected { seed });
    }
    Ok(UnitDisk {
        graph,
        points: coords,
    })
}

/// G(n, p): each pair joined independently with probability `p`.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph, GenerateError> {
    if n == 0 || !(0.0..=1.0).contains(&p) {
        return Err(GenerateError::InvalidParameter(format!(
            "need n >= 1 and p in [0, 1], got n={n}, p={p}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::new(n, edges)?)
}

/// Searches seeds `0, 1, ...` of G(n, d/(n-1)) for a graph whose average
/// degree is within [`DEGREE_TOLERANCE`] of `degree`. Returns the graph and
/// the accepted seed.
pub fn erdos_renyi_with_degree(n: usize, degree: f64) -> Result<(Graph, u64), GenerateError> {
    if n < 2 || !(0.0..=(n - 1) as f64).contains(&degree) {
        return Err(GenerateError::InvalidParameter(format!(
            "cannot target average degree {degree} on {n} vertices"
        )));
    }
    let p = degree / (n - 1) as f64;
    for seed in 0..DEGREE_SEED_ATTEMPTS {
        let g = erdos_renyi(n, p, seed)?;
        let average = 2.0 * g.edge_count() as f64 / n as f64;
        if (average - degree).abs() <= DEGREE_TOLERANCE {
            return Ok((g, seed));
        }
    }
    Err(GenerateError::DegreeTargetMissed {
        target: degree,
        tolerance: DEGREE_TOLERANCE,
        tried: DEGREE_SEED_ATTEMPTS,
    })
}

/// A generated instance description, written `family:params`.
///
/// | form | family |
/// |---|---|
/// | `grid:RxC` or `grid:N` | grid graph |
/// | `snark:K` | flower snark J(K) |
/// | `udg:C-R-M-N_S` | unit disk graph |
/// | `er:N-P_S` | G(N, P) with seed S |
/// | `random:N_D` | G(N, p) with average degree near D |
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum InstanceSpec {
    Grid {
        rows: usize,
        cols: usize,
    },
    FlowerSnark {
        k: usize,
    },
    UnitDisk {
        points: usize,
        radius: f64,
        width: f64,
        height: f64,
        seed: u64,
    },
    ErdosRenyi {
        n: usize,
        p: f64,
        seed: u64,
    },
    RandomDegree {
        n: usize,
        degree: f64,
    },
}

/// Output of [`InstanceSpec::build`].
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratedInstance {
    pub name: String,
    pub graph: Graph,
    /// Point coordinates, for unit disk graphs.
    pub points: Option<Vec<(f64, f64)>>,
    /// Seed actually used, for families that search over seeds.
    pub accepted_seed: Option<u64>,
}

impl InstanceSpec {
    pub fn canonical_name(&self) -> String {
        match self {
            InstanceSpec::Grid { rows, cols } => format!("G({rows},{cols})"),
            InstanceSpec::FlowerSnark { k } => format!("J({k})"),
            InstanceSpec::UnitDisk {
                points,
                radius,
                width,
                height,
                seed,
            } => format!("UDG_{points}-{radius}-{width}-{height}_{seed}"),
            InstanceSpec::ErdosRenyi { n, p, seed } => format!("ER_{n}-{p}_{seed}"),
            InstanceSpec::RandomDegree { n, degree } => format!("random{n}_{degree}"),
        }
    }

    /// Plot abscissa for families drawn as curves: `n` for square grids,
    /// `k` for flower snarks.
    pub fn series_x(&self) -> Option<usize> {
        match *self {
            InstanceSpec::Grid { rows, cols } if rows == cols => Some(rows),
            InstanceSpec::FlowerSnark { k } => Some(k),
            _ => None,
        }
    }

    pub fn family(&self) -> &'static str {
        match self {
            InstanceSpec::Grid { .. } => "grid",
            InstanceSpec::FlowerSnark { .. } => "snark",
            InstanceSpec::UnitDisk { .. } => "udg",
            InstanceSpec::ErdosRenyi { .. } => "er",
            InstanceSpec::RandomDegree { .. } => "random",
        }
    }

    pub fn build(&self) -> Result<GeneratedInstance, GenerateError> {
        let name = self.canonical_name();
        let plain = |graph| GeneratedInstance {
            name: name.clone(),
            graph,
            points: None,
            accepted_seed: None,
        };
        Ok(match *self {
            InstanceSpec::Grid { rows, cols } => plain(grid(rows, cols)?),
            InstanceSpec::FlowerSnark { k } => plain(flower_snark(k)?),
            InstanceSpec::UnitDisk {
                points,
                radius,
                width,
                height,
                seed,
            } => {
                let udg = unit_disk(points, radius, width, height, seed)?;
                GeneratedInstance {
                    name,
                    graph: udg.graph,
                    points: Some(udg.points),
                    accepted_seed: Some(seed),
                }
            }
            InstanceSpec::ErdosRenyi { n, p, seed } => GeneratedInstance {
                accepted_seed: Some(seed),
                ..plain(erdos_renyi(n, p, seed)?)
            },
            InstanceSpec::RandomDegree { n, degree } => {
                let (graph, seed) = erdos_renyi_with_degree(n, degree)?;
                GeneratedInstance {
                    accepted_seed: Some(seed),
                    ..plain(graph)
                }
            }
        })
    }
}

impl fmt::Display for InstanceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InstanceSpec::Grid { rows, cols } => write!(f, "grid:{rows}x{cols}"),
            InstanceSpec::FlowerSnark { k } => write!(f, "snark:{k}"),
            InstanceSpec::UnitDisk {
                points,
                radius,
                width,
                height,
                seed,
            } => write!(f, "udg:{points}-{radius}-{width}-{height}_{seed}"),
            InstanceSpec::ErdosRenyi { n, p, seed } => write!(f, "er:{n}-{p}_{seed}"),
            InstanceSpec::RandomDegree { n, degree } => write!(f, "random:{n}_{degree}"),
        }
    }
}

impl FromStr for InstanceSpec {
    type Err = GenerateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GenerateError::InvalidParameter(format!("cannot parse instance spec '{s}'"));
        let (family, params) = s.split_once(':').ok_or_else(bad)?;
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        let real = |t: &str| t.trim().parse::<f64>().map_err(|_| bad());
        let seed = |t: &str| t.trim().parse::<u64>().map_err(|_| bad());

        match family.trim().to_ascii_lowercase().as_str() {
            "grid" => {
                let (rows, cols) = match params.split_once(['x', ',']) {
                    Some((r, c)) => (num(r)?, num(c)?),
                    None => (num(params)?, num(params)?),
                };
                Ok(InstanceSpec::Grid { rows, cols })
            }
            "snark" | "flower" => Ok(InstanceSpec::FlowerSnark { k: num(params)? }),
            "udg" => {
                let (body, s) = params.rsplit_once('_').ok_or_else(bad)?;
                let parts: Vec<&str> = body.split('-').collect();
                let [c, r, m, n] = parts[..] else {
                    return Err(bad());
                };
                Ok(InstanceSpec::UnitDisk {
                    points: num(c)?,
                    radius: real(r)?,
                    width: real(m)?,
                    height: real(n)?,
                    seed: seed(s)?,
                })
            }
            "er" | "gnp" => {
                let (body, s) = params.rsplit_once('_').ok_or_else(bad)?;
                let (n, p) = body.split_once('-').ok_or_else(bad)?;
                Ok(InstanceSpec::ErdosRenyi {
                    n: num(n)?,
                    p: real(p)?,
                    seed: seed(s)?,
                })
            }
            "random" => {
                let (n, d) = params.split_once('_').ok_or_else(bad)?;
                Ok(InstanceSpec::RandomDegree {
                    n: num(n)?,
                    degree: real(d)?,
                })
            }
            _ => Err(bad()),
        }
    }
}
