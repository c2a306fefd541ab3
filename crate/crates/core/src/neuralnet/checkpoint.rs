//! Network checkpoints.
//!
//! Layout:
//!
//! ```text
//! 8 bytes   magic "TTRLMLP1"
//! 8 bytes   header length in bytes, u64 little-endian
//! n bytes   UTF-8 JSON header (layer sizes, activation tags, parameter count)
//! 8*k bytes parameters as f64 little-endian, per layer weights row-major then bias
//! ```

use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Activation, MlpNet, NetError};

pub const CHECKPOINT_MAGIC: &[u8; 8] = b"TTRLMLP1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckpointHeader {
    pub layer_sizes: Vec<usize>,
    pub activations: Vec<Activation>,
    pub param_count: usize,
}

impl MlpNet {
    pub fn write_checkpoint<W: Write>(&self, mut w: W) -> Result<(), NetError> {
        let header = CheckpointHeader {
            layer_sizes: self.sizes(),
            activations: self.activations(),
            param_count: self.param_count(),
        };
        let json = serde_json::to_vec(&header).map_err(|e| NetError::Checkpoint(e.to_string()))?;
        w.write_all(CHECKPOINT_MAGIC)?;
        w.write_all(&(json.len() as u64).to_le_bytes())?;
        w.write_all(&json)?;
        let mut blob = Vec::with_capacity(8 * header.param_count);
        for p in self.params_flat() {
            blob.extend_from_slice(&p.to_le_bytes());
        }
        w.write_all(&blob)?;
        Ok(())
    }

    pub fn read_checkpoint<R: Read>(mut r: R) -> Result<Self, NetError> {
        let mut magic = [0u8; 8];
        r.read_exact(&mut magic)?;
        if &magic != CHECKPOINT_MAGIC {
            return Err(NetError::Checkpoint("bad magic".into()));
        }
        let mut len = [0u8; 8];
        r.read_exact(&mut len)?;
        let len = u64::from_le_bytes(len) as usize;
        let mut json = vec![0u8; len];
        r.read_exact(&mut json)?;
        let header: CheckpointHeader =
            serde_json::from_slice(&json).map_err(|e| NetError::Checkpoint(e.to_string()))?;

        let mut net = MlpNet::zeros(&header.layer_sizes, &header.activations)?;
        if net.param_count() != header.param_count {
            return Err(NetError::Checkpoint(format!(
                "header declares {} parameters, architecture has {}",
                header.param_count,
                net.param_count()
            )));
        }
        let mut blob = vec![0u8; 8 * header.param_count];
        r.read_exact(&mut blob)?;
        let mut trailing = [0u8; 1];
        if r.read(&mut trailing)? != 0 {
            return Err(NetError::Checkpoint("trailing bytes after parameter blob".into()));
        }
        let params: Vec<f64> = blob
            .chunks_exact(8)
            .map(|c| f64::from_le_bytes(c.try_into().expect("chunk of 8")))
            .collect();
        net.set_params_flat(&params)?;
        Ok(net)
    }
}

pub fn save_checkpoint(net: &MlpNet, path: &Path) -> Result<(), NetError> {
    let mut buf = Vec::new();
    net.write_checkpoint(&mut buf)?;
    std::fs::write(path, buf)?;
    Ok(())
}

pub fn load_checkpoint(path: &Path) -> Result<MlpNet, NetError> {
    let bytes = std::fs::read(path)?;
    MlpNet::read_checkpoint(bytes.as_slice())
}
