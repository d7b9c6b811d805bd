//! JSON documents: instances, certificates and reports.
//!
//! All scalars are `"p/q"` strings (or `"p"`); every document carries an
//! optional `"version": "v1"` field.

use std::collections::BTreeMap;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::bundle::{validate_instance, Instance, MarkedPoints, SplittingType};
use crate::error::{Error, Result};
use crate::exactfield::{Mat, OneForm, Scalar};
use crate::obstruction::ObstructionReport;
use crate::synth::{ConnectionPresentation, VerifyReport};

pub const SCHEMA_VERSION: &str = "v1";

fn default_version() -> String {
    SCHEMA_VERSION.to_string()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    #[serde(default = "default_version")]
    pub version: String,
    pub splitting_type: Vec<i64>,
    #[serde(default)]
    pub points: Vec<Scalar>,
    #[serde(default)]
    pub residues: BTreeMap<String, Mat>,
}

impl InstanceFile {
    pub fn from_instance(inst: &Instance) -> Self {
        InstanceFile {
            version: default_version(),
            splitting_type: inst.st.degrees().to_vec(),
            points: inst.points.points().to_vec(),
            residues: inst
                .residues
                .iter()
                .map(|(x, m)| (x.to_string(), m.clone()))
                .collect(),
        }
    }

    pub fn into_instance(self) -> Result<Instance> {
        check_version(&self.version)?;
        let mut residues = Vec::with_capacity(self.residues.len());
        for (key, m) in self.residues {
            let x: Scalar = key.parse().map_err(|_| Error::Schema {
                path: format!("residues.{key}"),
                message: "key is not a rational number".into(),
            })?;
            residues.push((x, m));
        }
        validate_instance(&self.splitting_type, &self.points, &residues)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateFile {
    #[serde(default = "default_version")]
    pub version: String,
    pub splitting_type: Vec<i64>,
    #[serde(default)]
    pub points: Vec<Scalar>,
    pub omega0: Vec<Vec<OneForm>>,
}

impl CertificateFile {
    pub fn from_connection(conn: &ConnectionPresentation) -> Self {
        let r = conn.rank();
        CertificateFile {
            version: default_version(),
            splitting_type: conn.st.degrees().to_vec(),
            points: conn.points.points().to_vec(),
            omega0: conn.omega0.chunks(r).map(<[OneForm]>::to_vec).collect(),
        }
    }

    /// The certificate basis must already be in descending splitting order;
    /// nothing is permuted here.
    pub fn into_connection(self) -> Result<ConnectionPresentation> {
        check_version(&self.version)?;
        if self.splitting_type.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Schema {
                path: "splitting_type".into(),
                message: "must be non-increasing in a certificate".into(),
            });
        }
        let st = SplittingType::new(self.splitting_type)?;
        let r = st.rank();
        if self.omega0.len() != r {
            return Err(Error::Schema {
                path: "omega0".into(),
                message: format!("expected {r} rows, found {}", self.omega0.len()),
            });
        }
        if let Some(k) = self.omega0.iter().position(|row| row.len() != r) {
            return Err(Error::Schema {
                path: format!("omega0[{k}]"),
                message: format!("expected {r} entries"),
            });
        }
        Ok(ConnectionPresentation {
            st,
            points: MarkedPoints::new(self.points)?,
            omega0: self.omega0.into_iter().flatten().collect(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VersionedReport<T> {
    pub version: String,
    #[serde(flatten)]
    pub report: T,
}

impl<T> VersionedReport<T> {
    pub fn new(report: T) -> Self {
        VersionedReport {
            version: default_version(),
            report,
        }
    }
}

pub type ObstructionDocument = VersionedReport<ObstructionReport>;
pub type VerifyDocument = VersionedReport<VerifyReport>;

fn check_version(v: &str) -> Result<()> {
    if v == SCHEMA_VERSION {
        Ok(())
    } else {
        Err(Error::UnsupportedVersion(v.to_string()))
    }
}

/// Deserializes JSON, reporting the field path of the first violation.
pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        Error::Schema {
            path: if path.is_empty() { ".".into() } else { path },
            message: e.into_inner().to_string(),
        }
    })
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    from_json::<InstanceFile>(text)?.into_instance()
}

pub fn parse_certificate(text: &str) -> Result<ConnectionPresentation> {
    from_json::<CertificateFile>(text)?.into_connection()
}

pub fn certificate_json(conn: &ConnectionPresentation) -> String {
    serde_json::to_string_pretty(&CertificateFile::from_connection(conn)).expect("serializable")
}

pub fn instance_json(inst: &Instance) -> String {
    serde_json::to_string_pretty(&InstanceFile::from_instance(inst)).expect("serializable")
}
