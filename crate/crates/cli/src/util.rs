//! Shared I/O helpers: stdin-or-file inputs, stdout-or-file outputs, group
//! and generator parsing.

use std::io::Read;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use coverwalk::group::{
    cyclic_group, dihedral_group, elementary_abelian_2, FiniteGroup, GeneratingSet, Subgroup,
};
use coverwalk::WeightedGraph;

/// Reads a graph from the given path, or from stdin when the path is `-` or
/// absent.
pub fn read_graph(path: Option<&Path>) -> Result<WeightedGraph> {
    let text = read_text(path)?;
    WeightedGraph::from_json_str(&text).map_err(|e| anyhow!("parsing graph: {e}"))
}

pub fn read_text(path: Option<&Path>) -> Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))
        }
        _ => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf).context("reading stdin")?;
            Ok(buf)
        }
    }
}

/// `pi.json`: a bare JSON array of target indices, one per source vertex.
pub fn read_pi(path: &Path) -> Result<Vec<usize>> {
    let text = read_text(Some(path))?;
    serde_json::from_str(&text).with_context(|| format!("parsing projection {}", path.display()))
}

/// Writes to the path, or stdout when absent.
pub fn write_output(path: Option<&PathBuf>, content: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, content).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

/// Group specifications: `cyclic:N`, `dihedral:N`, `z2n:N`.
pub fn parse_group(spec: &str) -> Result<FiniteGroup> {
    let (name, size) = spec
        .split_once(':')
        .ok_or_else(|| anyhow!("group spec must look like cyclic:12, dihedral:7 or z2n:4"))?;
    let size: usize = size.parse().with_context(|| format!("group size in {spec}"))?;
    let group = match name {
        "cyclic" => cyclic_group(size)?,
        "dihedral" => dihedral_group(size)?,
        "z2n" => elementary_abelian_2(size)?,
        other => bail!("unknown group family {other}"),
    };
    Ok(group)
}

/// Generator tokens: element ids, or `s`/`sinv`/`t` for dihedral groups
/// (`sⁱtʲ ↦ i + n·j`), or `e<k>` for `(Z/2Z)ⁿ` basis vectors.
pub fn parse_elements(group_spec: &str, group: &FiniteGroup, tokens: &str) -> Result<Vec<usize>> {
    let family = group_spec.split(':').next().unwrap_or("");
    let n_rot = group.order() / 2; // only meaningful for dihedral
    tokens
        .split(',')
        .map(|tok| {
            let tok = tok.trim();
            if let Ok(v) = tok.parse::<usize>() {
                return Ok(v);
            }
            match (family, tok) {
                ("dihedral", "s") => Ok(1),
                ("dihedral", "sinv") => Ok(n_rot - 1),
                ("dihedral", "t") => Ok(n_rot),
                ("z2n", t) if t.starts_with('e') => {
                    let k: usize = t[1..].parse().with_context(|| format!("token {tok}"))?;
                    if k == 0 {
                        bail!("basis vectors are e1, e2, …");
                    }
                    Ok(1usize << (k - 1))
                }
                _ => bail!("cannot parse element token {tok:?} for group {group_spec}"),
            }
        })
        .collect()
}

pub fn parse_generating_set(
    group_spec: &str,
    group: &FiniteGroup,
    tokens: &str,
) -> Result<GeneratingSet> {
    let elements = parse_elements(group_spec, group, tokens)?;
    Ok(GeneratingSet::new(group, elements)?)
}

pub fn parse_subgroup(group_spec: &str, group: &FiniteGroup, tokens: &str) -> Result<Subgroup> {
    let elements = parse_elements(group_spec, group, tokens)?;
    Ok(Subgroup::new(group, elements)?)
}
