//! Descent classes of `𝔖_n`, the structure constants of the descent algebra,
//! and the internal product obtained from them.

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, OnceLock};

use super::{Basis, NsymElement};
use crate::composition::{compositions_of, Composition, Permutation};
use crate::error::{Error, Result};


pub const DEFAULT_ORACLE_LIMIT: usize = 8;

/// Environment variable naming a directory for persisted descent tables.
pub const CACHE_ENV: &str = "NSYM_TABLE_CACHE";

const CACHE_VERSION: u32 = 1;

/// Controls how far the permutation oracle may go and where tables persist.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub limit: usize,
    pub cache_dir: Option<PathBuf>,
}

impl Default for OracleConfig {
    /// Limit 8; cache directory from `NSYM_TABLE_CACHE` when set.
    fn default() -> Self {
        OracleConfig {
            limit: DEFAULT_ORACLE_LIMIT,
            cache_dir: std::env::var_os(CACHE_ENV).map(PathBuf::from),
        }
    }
}

impl OracleConfig {
    pub fn with_limit(limit: usize) -> Self {
        OracleConfig {
            limit,
            ..OracleConfig::default()
        }
    }
}

/// All `σ ∈ 𝔖_n` whose descent composition is `comp`, in lexicographic order.
pub fn descent_class(comp: &Composition, cfg: &OracleConfig) -> Result<Vec<Permutation>> {
    let n = comp.weight();
    if n > cfg.limit {
        return Err(Error::Capacity { n, limit: cfg.limit });
    }
    Ok(Permutation::all(n)
        .filter(|p| p.descent_composition() == *comp)
        .collect())
}

/// Structure constants `D_{=I} D_{=J} = Σ_K c^K_{I,J} D_{=K}` in `ℂ[𝔖_n]`,
/// with the product `στ = σ ∘ τ`.
#[derive(Debug, PartialEq, Eq)]
pub struct DescentTable {
    n: usize,
    /// Indexed by `mask(I) * 2^{n−1} + mask(J)`; sparse `(mask(K), c)` lists.
    entries: Vec<Vec<(u64, u64)>>,
}

impl DescentTable {
    pub fn n(&self) -> usize {
        self.n
    }

    fn width(&self) -> usize {
        if self.n == 0 {
            1
        } else {
            1 << (self.n - 1)
        }
    }

    fn slot(&self, i: &Composition, j: &Composition) -> usize {
        assert_eq!(i.weight(), self.n, "composition {i} not of weight {}", self.n);
        assert_eq!(j.weight(), self.n, "composition {j} not of weight {}", self.n);
        i.descent_mask() as usize * self.width() + j.descent_mask() as usize
    }

    /// `c^K_{I,J}`.
    pub fn constant(&self, i: &Composition, j: &Composition, k: &Composition) -> u64 {
        let km = k.descent_mask();
        self.entries[self.slot(i, j)]
            .iter()
            .find(|(m, _)| *m == km)
            .map_or(0, |(_, c)| *c)
    }

    /// The nonzero `(K, c^K_{I,J})`.
    pub fn product(&self, i: &Composition, j: &Composition) -> Vec<(Composition, u64)> {
        self.entries[self.slot(i, j)]
            .iter()
            .map(|&(m, c)| (Composition::from_mask(m, self.n), c))
            .collect()
    }

    /// Every `(I, J, K, c)` with `c ≠ 0`, in canonical order.
    pub fn quadruples(&self) -> Vec<(Composition, Composition, Composition, u64)> {
        let comps = compositions_of(self.n);
        let mut out = Vec::new();
        for i in &comps {
            for j in &comps {
                for (k, c) in self.product(i, j) {
                    out.push((i.clone(), j.clone(), k, c));
                }
            }
        }
        out
    }

    fn compute(n: usize) -> DescentTable {
        let width = if n == 0 { 1 } else { 1usize << (n - 1) };
        let perms: Vec<Permutation> = Permutation::all(n).collect();
        let masks: Vec<u64> = perms.iter().map(Permutation::descent_mask).collect();
        let inverses: Vec<Permutation> = perms.iter().map(Permutation::inverse).collect();
        let mut entries = vec![Vec::new(); width * width];
        let mut counts = vec![0u64; width * width];
        for k in 0..width as u64 {
            // c^K_{I,J} = #{σ ∈ I : σ^{-1} ∘ π ∈ J} for a fixed π of class K
            let pi = &perms[masks.iter().position(|&m| m == k).expect("every class is nonempty")];
            counts.iter_mut().for_each(|c| *c = 0);
            for (inv, &im) in inverses.iter().zip(&masks) {
                let jm = inv.compose(pi).descent_mask();
                counts[im as usize * width + jm as usize] += 1;
            }
            for (slot, &c) in counts.iter().enumerate() {
                if c > 0 {
                    entries[slot].push((k, c));
                }
            }
        }
        DescentTable { n, entries }
    }

    fn cache_file(dir: &Path, n: usize) -> PathBuf {
        dir.join(format!("descent-table-v{CACHE_VERSION}-n{n}.txt"))
    }

    /// Writes the versioned text form: a header line, then `I J K c` per line.
    pub fn save(&self, path: &Path) -> Result<()> {
        let io = |e: std::io::Error| Error::Cache(format!("{}: {e}", path.display()));
        let mut body = format!("nsym-descent-table {CACHE_VERSION} {}\n", self.n);
        for (i, j, k, c) in self.quadruples() {
            body.push_str(&format!("{i} {j} {k} {c}\n"));
        }
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        let mut f = fs::File::create(&tmp).map_err(io)?;
        f.write_all(body.as_bytes()).map_err(io)?;
        drop(f);
        fs::rename(&tmp, path).map_err(io)
    }

    pub fn load(path: &Path) -> Result<DescentTable> {
        let bad = |m: &str| Error::Cache(format!("{}: {m}", path.display()));
        let text = fs::read_to_string(path).map_err(|e| bad(&e.to_string()))?;
        let mut lines = text.lines();
        let header: Vec<&str> = lines.next().unwrap_or("").split(' ').collect();
        if header.len() != 3 || header[0] != "nsym-descent-table" {
            return Err(bad("missing header"));
        }
        if header[1] != CACHE_VERSION.to_string() {
            return Err(bad("unsupported version"));
        }
        let n: usize = header[2].parse().map_err(|_| bad("bad weight"))?;
        let width = if n == 0 { 1 } else { 1usize << (n - 1) };
        let mut entries = vec![Vec::new(); width * width];
        for line in lines {
            let f: Vec<&str> = line.split(' ').collect();
            if f.len() != 4 {
                return Err(bad("malformed line"));
            }
            let comp = |s: &str| -> Result<Composition> {
                let c: Composition = s.parse().map_err(|_| bad("bad composition"))?;
                if c.weight() != n {
                    return Err(bad("composition of wrong weight"));
                }
                Ok(c)
            };
            let (i, j, k) = (comp(f[0])?, comp(f[1])?, comp(f[2])?);
            let c: u64 = f[3].parse().map_err(|_| bad("bad constant"))?;
            entries[i.descent_mask() as usize * width + j.descent_mask() as usize]
                .push((k.descent_mask(), c));
        }
        for e in &mut entries {
            e.sort_unstable();
        }
        Ok(DescentTable { n, entries })
    }
}

type Slot = Arc<OnceLock<Arc<DescentTable>>>;

fn registry() -> &'static Mutex<HashMap<usize, Slot>> {
    static TABLES: OnceLock<Mutex<HashMap<usize, Slot>>> = OnceLock::new();
    TABLES.get_or_init(|| Mutex::new(HashMap::new()))
}

fn slot(n: usize) -> Slot {
    registry().lock().unwrap().entry(n).or_default().clone()
}

/// The descent table for `𝔖_n`, from memory, the disk cache, or the oracle.
///
/// Above the oracle limit only an already available table is returned.
pub fn build_descent_table(n: usize, cfg: &OracleConfig) -> Result<Arc<DescentTable>> {
    let cell = slot(n);
    if let Some(t) = cell.get() {
        return Ok(t.clone());
    }
    let cached = cfg
        .cache_dir
        .as_ref()
        .map(|d| DescentTable::cache_file(d, n))
        .filter(|p| p.exists())
        .and_then(|p| DescentTable::load(&p).ok())
        .filter(|t| t.n == n);
    if cached.is_none() && n > cfg.limit {
        return Err(Error::Capacity { n, limit: cfg.limit });
    }
    let table = cell.get_or_init(|| {
        Arc::new(cached.unwrap_or_else(|| {
            let t = DescentTable::compute(n);
            if let Some(dir) = &cfg.cache_dir {
                // best effort; a failed write only costs a rebuild later
                let _ = fs::create_dir_all(dir).and_then(|_| {
                    t.save(&DescentTable::cache_file(dir, n))
                        .map_err(|e| std::io::Error::other(e.to_string()))
                });
            }
            t
        }))
    });
    Ok(table.clone())
}

/// `F * G` with the default oracle configuration.
pub fn internal_product(f: &NsymElement, g: &NsymElement) -> Result<NsymElement> {
    internal_product_with(f, g, &OracleConfig::default())
}

/// `F * G = α^{-1}(α(G) α(F))` with `α(D_{=I}) = R_I`, computed weight by
/// weight; components of different weights multiply to zero. The result is in
/// the basis of `f`.
pub fn internal_product_with(
    f: &NsymElement,
    g: &NsymElement,
    cfg: &OracleConfig,
) -> Result<NsymElement> {
    let fr = f.to_basis(Basis::R);
    let gr = g.to_basis(Basis::R);
    let mut out = NsymElement::zero(Basis::R);
    for n in fr.weights() {
        let gn = gr.homogeneous_component(n);
        if gn.is_zero() {
            continue;
        }
        let table = build_descent_table(n, cfg)?;
        for (i, x) in fr.homogeneous_component(n).iter() {
            for (j, y) in gn.iter() {
                let xy = x * y;
                for (k, c) in table.product(j, i) {
                    out.add_term(k, &xy.scale_int(c as i64));
                }
            }
        }
    }
    Ok(out.to_basis(f.basis()))
}
