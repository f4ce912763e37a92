//! JSON representations of cones, bodies, reports and certificates,
//! and their conversions to and from the core types.

use std::collections::BTreeMap;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use conelab_core::cone::{ConeGeometry, EllipsoidalCone, PolyhedralCone};
use conelab_core::duality::DualityCertificate;
use conelab_core::linalg::LinearSubspace;
use conelab_core::mat::Mat;
use conelab_core::properties::PropertyReport;
use conelab_core::sections::{EllipsoidBody, PolytopeBody};
use conelab_core::{AffineSubspace, ConeRep, ConvexBody};

fn mat_rows(m: &Mat) -> Vec<Vec<f64>> {
    (0..m.rows).map(|i| m.row(i).to_vec()).collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum ConeJson {
    Polyhedral {
        id: String,
        dim: usize,
        generators: Vec<Vec<f64>>,
        halfspaces: Vec<Vec<f64>>,
    },
    Ellipsoidal {
        id: String,
        dim: usize,
        u: Vec<f64>,
        center: Vec<f64>,
        basis: Vec<Vec<f64>>,
        form: Vec<Vec<f64>>,
    },
}

impl ConeJson {
    pub fn from_cone(cone: &ConeRep) -> Self {
        match &cone.geometry {
            ConeGeometry::Polyhedral(p) => ConeJson::Polyhedral {
                id: cone.id.clone(),
                dim: p.dim,
                generators: p.generators.clone(),
                halfspaces: p.halfspaces.clone(),
            },
            ConeGeometry::Ellipsoidal(e) => ConeJson::Ellipsoidal {
                id: cone.id.clone(),
                dim: e.dim,
                u: e.u.clone(),
                center: e.center.clone(),
                basis: e.basis.clone(),
                form: mat_rows(&e.form),
            },
        }
    }

    pub fn into_cone(self) -> Result<ConeRep> {
        match self {
            ConeJson::Polyhedral {
                id,
                dim,
                generators,
                halfspaces,
            } => {
                let cone = if halfspaces.is_empty() {
                    PolyhedralCone::from_generators(&generators, dim)
                } else if generators.is_empty() {
                    PolyhedralCone::from_halfspaces(&halfspaces, dim)
                } else {
                    // trust a complete double description as-is
                    Ok(PolyhedralCone {
                        dim,
                        generators,
                        halfspaces,
                    })
                }
                .map_err(|e| anyhow::anyhow!("invalid polyhedral cone: {e}"))?;
                Ok(ConeRep::polyhedral(id, "file".to_string(), cone))
            }
            ConeJson::Ellipsoidal {
                id,
                dim,
                u,
                center,
                basis,
                form,
            } => {
                if u.len() != dim {
                    bail!("axis functional length {} != dim {}", u.len(), dim);
                }
                let cone = EllipsoidalCone::new(u, center, basis, Mat::from_rows(&form))
                    .map_err(|e| anyhow::anyhow!("invalid ellipsoidal cone: {e}"))?;
                Ok(ConeRep::ellipsoidal(id, "file".to_string(), cone))
            }
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AmbientJson {
    pub point: Vec<f64>,
    pub basis: Vec<Vec<f64>>,
}

impl AmbientJson {
    pub fn from_affine(a: &AffineSubspace) -> Self {
        AmbientJson {
            point: a.point().clone(),
            basis: a.directions.basis().to_vec(),
        }
    }

    pub fn into_affine(self) -> Result<AffineSubspace> {
        let n = self.point.len();
        for b in &self.basis {
            if b.len() != n {
                bail!("ambient basis vector length {} != {}", b.len(), n);
            }
        }
        Ok(AffineSubspace::new(
            self.point,
            LinearSubspace::from_spanning(&self.basis, n, 1e-12),
        ))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum BodyJson {
    Polytope {
        ambient: AmbientJson,
        vertices: Vec<Vec<f64>>,
    },
    Ellipsoid {
        ambient: AmbientJson,
        center: Vec<f64>,
        basis: Vec<Vec<f64>>,
        form: Vec<Vec<f64>>,
    },
}

impl BodyJson {
    pub fn from_body(body: &ConvexBody) -> Self {
        match body {
            ConvexBody::Polytope(p) => BodyJson::Polytope {
                ambient: AmbientJson::from_affine(&p.ambient),
                vertices: p.vertices.clone(),
            },
            ConvexBody::Ellipsoid(e) => BodyJson::Ellipsoid {
                ambient: AmbientJson::from_affine(&e.ambient),
                center: e.center.clone(),
                basis: e.basis.clone(),
                form: mat_rows(&e.form),
            },
        }
    }

    pub fn into_body(self) -> Result<ConvexBody> {
        match self {
            BodyJson::Polytope { ambient, vertices } => {
                if vertices.is_empty() {
                    bail!("polytope body without vertices");
                }
                Ok(ConvexBody::Polytope(PolytopeBody {
                    ambient: ambient.into_affine()?,
                    vertices,
                }))
            }
            BodyJson::Ellipsoid {
                ambient,
                center,
                basis,
                form,
            } => Ok(ConvexBody::Ellipsoid(EllipsoidBody {
                ambient: ambient.into_affine()?,
                center,
                basis,
                form: Mat::from_rows(&form),
            })),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WitnessJson {
    pub label: String,
    pub data: Vec<f64>,
    pub value: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReportJson {
    pub cone_id: String,
    pub property: String,
    pub verdict: String,
    pub samples: usize,
    pub seed: u64,
    pub tolerances: BTreeMap<String, f64>,
    pub witnesses: Vec<WitnessJson>,
    pub runtime_ms: u64,
}

impl ReportJson {
    pub fn from_report(r: &PropertyReport) -> Self {
        ReportJson {
            cone_id: r.cone_id.clone(),
            property: r.property.as_str().to_string(),
            verdict: r.verdict.as_str().to_string(),
            samples: r.samples,
            seed: r.seed,
            tolerances: r.tolerances.clone(),
            witnesses: r
                .witnesses
                .iter()
                .map(|w| WitnessJson {
                    label: w.label.clone(),
                    data: w.data.clone(),
                    value: w.value,
                })
                .collect(),
            runtime_ms: r.runtime_ms,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateJson {
    pub phi: Vec<f64>,
    pub r_star: f64,
    pub eps_star: f64,
    pub product_defect: f64,
}

impl CertificateJson {
    pub fn from_certificate(c: &DualityCertificate) -> Self {
        CertificateJson {
            phi: c.phi.clone(),
            r_star: c.r_star,
            eps_star: c.eps_star,
            product_defect: c.product_defect,
        }
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &std::path::Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn write_json<T: Serialize>(path: &std::path::Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}
