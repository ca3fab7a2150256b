//! JSON file formats: `*.sset.json`, `*.smap.json`, `*.cat.json`,
//! `*.fun.json`, `*.pcat.json` and `*.cert.json`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::Path;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::anodyne::{AnodyneCertificate, AnodyneStep};
use crate::category::{Arrow, FiniteCategory, FiniteFunctor};
use crate::error::{Error, Result};
use crate::pathcat::{HomSetTable, PresentedCategory};
use crate::sset::{SimplexExpr, SimplexId, SimplicialMap, SimplicialSet, SimplicialSetBuilder};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceJson {
    pub word: Vec<usize>,
    pub base: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplexJson {
    pub id: usize,
    pub faces: Vec<FaceJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SsetJson {
    pub dim_bound: usize,
    pub coskeletal_at: Option<usize>,
    /// One array per dimension.
    pub simplices: Vec<Vec<SimplexJson>>,
}

fn face_json(e: &SimplexExpr) -> FaceJson {
    FaceJson { word: e.word().to_vec(), base: e.base().0 }
}

pub fn sset_to_json(x: &SimplicialSet) -> SsetJson {
    let top = x.top_dim().unwrap_or(0);
    let simplices = (0..=top)
        .map(|d| {
            x.nondegenerate(d)
                .iter()
                .map(|&id| SimplexJson {
                    id: id.0,
                    faces: x.simplex(id).expect("own id").faces().iter().map(face_json).collect(),
                })
                .collect()
        })
        .collect();
    SsetJson { dim_bound: x.dim_bound(), coskeletal_at: x.coskeletal_at(), simplices }
}

/// File ids may be any distinct numbers; the result numbers simplices in
/// file order, dimension by dimension.
fn sset_with_ids(j: &SsetJson) -> Result<(SimplicialSet, HashMap<usize, SimplexId>)> {
    if j.simplices.len() > j.dim_bound + 1 {
        return Err(Error::Format(format!("simplices above dim_bound {}", j.dim_bound)));
    }
    let mut builder = SimplicialSetBuilder::new(j.dim_bound).coskeletal_at(j.coskeletal_at);
    let mut ids: HashMap<usize, SimplexId> = HashMap::new();
    let mut dims: HashMap<SimplexId, usize> = HashMap::new();
    for (d, layer) in j.simplices.iter().enumerate() {
        for s in layer {
            if ids.contains_key(&s.id) {
                return Err(Error::Format(format!("duplicate simplex id {}", s.id)));
            }
            let expected = if d == 0 { 0 } else { d + 1 };
            if s.faces.len() != expected {
                return Err(Error::Format(format!("simplex {} of dimension {d} has {} faces", s.id, s.faces.len())));
            }
            let id = if d == 0 {
                builder.add_vertex()
            } else {
                let faces = s
                    .faces
                    .iter()
                    .map(|f| {
                        let base = *ids.get(&f.base).ok_or_else(|| {
                            Error::Format(format!("face of simplex {} refers to unknown id {}", s.id, f.base))
                        })?;
                        SimplexExpr::new(base, dims[&base], f.word.clone())
                    })
                    .collect::<Result<Vec<_>>>()?;
                builder.add_simplex(faces)?
            };
            ids.insert(s.id, id);
            dims.insert(id, d);
        }
    }
    Ok((builder.build()?, ids))
}

/// Parses and validates a simplicial set.
pub fn sset_from_json(j: &SsetJson) -> Result<SimplicialSet> {
    Ok(sset_with_ids(j)?.0)
}

fn expr_in(x: &SimplicialSet, ids: &HashMap<usize, SimplexId>, f: &FaceJson) -> Result<SimplexExpr> {
    let base = *ids.get(&f.base).ok_or_else(|| Error::Format(format!("unknown simplex id {}", f.base)))?;
    SimplexExpr::new(base, x.dim_of(base), f.word.clone())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageJson {
    pub id: usize,
    pub image: FaceJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmapJson {
    pub source: SsetJson,
    pub target: SsetJson,
    pub assignment: Vec<ImageJson>,
}

pub fn smap_to_json(f: &SimplicialMap) -> SmapJson {
    SmapJson {
        source: sset_to_json(f.source()),
        target: sset_to_json(f.target()),
        assignment: f
            .assignment()
            .iter()
            .enumerate()
            .map(|(i, e)| ImageJson { id: i, image: face_json(e) })
            .collect(),
    }
}

pub fn smap_from_json(j: &SmapJson) -> Result<SimplicialMap> {
    let (source, sids) = sset_with_ids(&j.source)?;
    let (target, tids) = sset_with_ids(&j.target)?;
    let mut images: Vec<Option<SimplexExpr>> = vec![None; source.len()];
    for entry in &j.assignment {
        let id = *sids.get(&entry.id).ok_or_else(|| Error::Format(format!("unknown source id {}", entry.id)))?;
        images[id.0] = Some(expr_in(&target, &tids, &entry.image)?);
    }
    let assignment = images
        .into_iter()
        .enumerate()
        .map(|(i, e)| e.ok_or_else(|| Error::Format(format!("no image for source simplex {i}"))))
        .collect::<Result<Vec<_>>>()?;
    SimplicialMap::new(Arc::new(source), Arc::new(target), assignment)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowJson {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatJson {
    pub objects: Vec<String>,
    pub arrows: Vec<ArrowJson>,
    /// Object name to the name of its identity.
    pub identities: BTreeMap<String, String>,
    /// Triples `[g, f, g ∘ f]`.
    pub compose: Vec<[String; 3]>,
}

pub fn cat_to_json(c: &FiniteCategory) -> CatJson {
    let name = |a: usize| c.arrow(a).name.clone();
    CatJson {
        objects: c.objects().to_vec(),
        arrows: c
            .arrows()
            .iter()
            .map(|a| ArrowJson {
                id: a.name.clone(),
                src: c.object_name(a.src).to_string(),
                tgt: c.object_name(a.tgt).to_string(),
            })
            .collect(),
        identities: (0..c.num_objects()).map(|x| (c.object_name(x).to_string(), name(c.identity(x)))).collect(),
        compose: c.table().into_iter().map(|(g, f, gf)| [name(g), name(f), name(gf)]).collect(),
    }
}

fn unique_index(names: impl Iterator<Item = String>, what: &str) -> Result<HashMap<String, usize>> {
    let mut out = HashMap::new();
    for (i, n) in names.enumerate() {
        if out.insert(n.clone(), i).is_some() {
            return Err(Error::Format(format!("duplicate {what} name {n:?}")));
        }
    }
    Ok(out)
}

fn lookup(index: &HashMap<String, usize>, name: &str, what: &str) -> Result<usize> {
    index.get(name).copied().ok_or_else(|| Error::Format(format!("unknown {what} {name:?}")))
}

pub fn cat_from_json(j: &CatJson) -> Result<FiniteCategory> {
    let objects = unique_index(j.objects.iter().cloned(), "object")?;
    let arrows_index = unique_index(j.arrows.iter().map(|a| a.id.clone()), "arrow")?;
    let arrows = j
        .arrows
        .iter()
        .map(|a| {
            Ok(Arrow {
                name: a.id.clone(),
                src: lookup(&objects, &a.src, "object")?,
                tgt: lookup(&objects, &a.tgt, "object")?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    if j.identities.len() != j.objects.len() {
        return Err(Error::Format("one identity per object is required".into()));
    }
    let identities = j
        .objects
        .iter()
        .map(|x| {
            let id = j.identities.get(x).ok_or_else(|| Error::Format(format!("no identity for {x:?}")))?;
            lookup(&arrows_index, id, "arrow")
        })
        .collect::<Result<Vec<_>>>()?;
    let table = j
        .compose
        .iter()
        .map(|[g, f, gf]| {
            Ok((lookup(&arrows_index, g, "arrow")?, lookup(&arrows_index, f, "arrow")?, lookup(&arrows_index, gf, "arrow")?))
        })
        .collect::<Result<Vec<_>>>()?;
    FiniteCategory::new(j.objects.clone(), arrows, identities, table)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunJson {
    pub source: CatJson,
    pub target: CatJson,
    pub objects: BTreeMap<String, String>,
    pub arrows: BTreeMap<String, String>,
}

pub fn fun_to_json(f: &FiniteFunctor) -> FunJson {
    let (c, d) = (f.source(), f.target());
    FunJson {
        source: cat_to_json(c),
        target: cat_to_json(d),
        objects: (0..c.num_objects())
            .map(|x| (c.object_name(x).to_string(), d.object_name(f.object(x)).to_string()))
            .collect(),
        arrows: (0..c.num_arrows()).map(|a| (c.arrow(a).name.clone(), d.arrow(f.arrow(a)).name.clone())).collect(),
    }
}

pub fn fun_from_json(j: &FunJson) -> Result<FiniteFunctor> {
    let c = Arc::new(cat_from_json(&j.source)?);
    let d = Arc::new(cat_from_json(&j.target)?);
    let d_objects = unique_index(d.objects().iter().cloned(), "object")?;
    let d_arrows = unique_index(d.arrows().iter().map(|a| a.name.clone()), "arrow")?;
    let objects = c
        .objects()
        .iter()
        .map(|x| {
            let y = j.objects.get(x).ok_or_else(|| Error::Format(format!("no image for object {x:?}")))?;
            lookup(&d_objects, y, "object")
        })
        .collect::<Result<Vec<_>>>()?;
    let arrows = c
        .arrows()
        .iter()
        .map(|a| {
            let b = j.arrows.get(&a.name).ok_or_else(|| Error::Format(format!("no image for arrow {:?}", a.name)))?;
            lookup(&d_arrows, b, "arrow")
        })
        .collect::<Result<Vec<_>>>()?;
    FiniteFunctor::new(c, d, objects, arrows)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PcatJson {
    pub presentation: PresentedCategory,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub homsets: Option<HomSetTable>,
}

/// Checks that the presentation is well formed.
pub fn pcat_from_json(j: PcatJson) -> Result<PcatJson> {
    j.presentation.validate()?;
    Ok(j)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepJson {
    pub n: usize,
    pub k: usize,
    pub horn: Vec<FaceJson>,
    pub attached: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertJson {
    pub label: String,
    pub target: SsetJson,
    pub source: Vec<usize>,
    pub steps: Vec<StepJson>,
}

pub fn cert_to_json(c: &AnodyneCertificate) -> CertJson {
    CertJson {
        label: c.label.clone(),
        target: sset_to_json(&c.target),
        source: c.source.iter().map(|id| id.0).collect(),
        steps: c
            .steps
            .iter()
            .map(|s| StepJson { n: s.n, k: s.k, horn: s.horn.iter().map(face_json).collect(), attached: s.attached.0 })
            .collect(),
    }
}

/// Parses a certificate without judging it; see `verify_certificate`.
pub fn cert_from_json(j: &CertJson) -> Result<AnodyneCertificate> {
    let (target, ids) = sset_with_ids(&j.target)?;
    let find = |i: usize| ids.get(&i).copied().ok_or_else(|| Error::Format(format!("unknown simplex id {i}")));
    let source = j.source.iter().map(|&i| find(i)).collect::<Result<BTreeSet<_>>>()?;
    let steps = j
        .steps
        .iter()
        .map(|s| {
            Ok(AnodyneStep {
                n: s.n,
                k: s.k,
                horn: s.horn.iter().map(|f| expr_in(&target, &ids, f)).collect::<Result<Vec<_>>>()?,
                attached: find(s.attached)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AnodyneCertificate { label: j.label.clone(), target: Arc::new(target), source, steps })
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    std::fs::write(path, to_json_string(value)?)?;
    Ok(())
}
