//! Reader for the Gmsh MSH 2.2 ASCII format.
//!
//! Supported element type codes: 1 (2-node line), 2 (3-node triangle) and
//! 15 (point, ignored). Unknown sections are skipped; physical-group tags
//! are kept per element so boundary conditions can be selected by group.

use super::{Element, ElementKind, Mesh, Node};
use crate::error::{Error, Result};
use std::collections::HashMap;

struct Lines<'a> {
    inner: std::str::Lines<'a>,
    number: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines(),
            number: 0,
        }
    }

    /// Next non-empty line, trimmed.
    fn next_content(&mut self) -> Option<(usize, &'a str)> {
        loop {
            let line = self.inner.next()?;
            self.number += 1;
            let trimmed = line.trim();
            if !trimmed.is_empty() {
                return Some((self.number, trimmed));
            }
        }
    }
}

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::MshSyntax {
        line,
        message: message.into(),
    }
}

fn parse_count(lines: &mut Lines, what: &str) -> Result<usize> {
    let (ln, line) = lines
        .next_content()
        .ok_or_else(|| syntax(0, format!("unexpected end of file before {what} count")))?;
    line.parse()
        .map_err(|_| syntax(ln, format!("expected {what} count, got {line:?}")))
}

fn expect_section_end(lines: &mut Lines, end: &str) -> Result<()> {
    match lines.next_content() {
        Some((_, line)) if line == end => Ok(()),
        Some((ln, line)) => Err(syntax(ln, format!("expected {end}, got {line:?}"))),
        None => Err(syntax(0, format!("unexpected end of file, missing {end}"))),
    }
}

/// Parses MSH 2.2 ASCII text into a [`Mesh`].
///
/// Triangles listed clockwise are reoriented; on 1-D meshes line elements
/// are reordered so node coordinates increase. Nodes referenced by no
/// retained element (e.g. only by ignored point elements) are dropped.
pub fn parse_msh(text: &str) -> Result<Mesh> {
    let mut lines = Lines::new(text);

    // Header
    match lines.next_content() {
        Some((_, "$MeshFormat")) => {}
        Some((ln, other)) => {
            return Err(Error::MalformedHeader(format!(
                "expected $MeshFormat at line {ln}, got {other:?}"
            )))
        }
        None => return Err(Error::MalformedHeader("missing $MeshFormat".into())),
    }
    let (ln, header) = lines
        .next_content()
        .ok_or_else(|| Error::MalformedHeader("missing version line".into()))?;
    let mut fields = header.split_whitespace();
    let version = fields
        .next()
        .ok_or_else(|| Error::MalformedHeader("empty version line".into()))?;
    if version != "2.2" {
        return Err(Error::UnsupportedVersion(version.to_string()));
    }
    let file_type: u32 = fields
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| syntax(ln, "missing file-type field"))?;
    if file_type != 0 {
        return Err(Error::UnsupportedVersion(format!(
            "2.2 binary (file-type {file_type})"
        )));
    }
    expect_section_end(&mut lines, "$EndMeshFormat")?;

    let mut raw_nodes: Vec<(usize, [f64; 3])> = Vec::new();
    let mut raw_elements: Vec<(usize, u32, Option<i32>, Vec<usize>)> = Vec::new();
    let mut seen_nodes = false;
    let mut seen_elements = false;

    while let Some((ln, line)) = lines.next_content() {
        match line {
            "$Nodes" => {
                seen_nodes = true;
                let count = parse_count(&mut lines, "node")?;
                for _ in 0..count {
                    let (ln, line) = lines
                        .next_content()
                        .ok_or_else(|| syntax(0, "unexpected end of file in $Nodes"))?;
                    let mut fields = line.split_whitespace();
                    let id: usize = fields
                        .next()
                        .and_then(|f| f.parse().ok())
                        .ok_or_else(|| syntax(ln, "bad node id"))?;
                    let mut coords = [0.0; 3];
                    for c in coords.iter_mut() {
                        *c = fields
                            .next()
                            .and_then(|f| f.parse().ok())
                            .ok_or_else(|| syntax(ln, "node needs 3 coordinates"))?;
                    }
                    raw_nodes.push((id, coords));
                }
                expect_section_end(&mut lines, "$EndNodes")?;
            }
            "$Elements" => {
                seen_elements = true;
                let count = parse_count(&mut lines, "element")?;
                for _ in 0..count {
                    let (ln, line) = lines
                        .next_content()
                        .ok_or_else(|| syntax(0, "unexpected end of file in $Elements"))?;
                    let fields: Vec<&str> = line.split_whitespace().collect();
                    if fields.len() < 3 {
                        return Err(syntax(ln, "element needs id, type and tag count"));
                    }
                    let id: usize = fields[0]
                        .parse()
                        .map_err(|_| syntax(ln, "bad element id"))?;
                    let type_code: u32 = fields[1]
                        .parse()
                        .map_err(|_| syntax(ln, "bad element type"))?;
                    let n_tags: usize = fields[2]
                        .parse()
                        .map_err(|_| syntax(ln, "bad tag count"))?;
                    let n_nodes = match type_code {
                        1 => 2,
                        2 => 3,
                        15 => 1,
                        other => return Err(Error::UnsupportedElementType(other)),
                    };
                    if fields.len() != 3 + n_tags + n_nodes {
                        return Err(syntax(
                            ln,
                            format!(
                                "element {id}: expected {} fields, got {}",
                                3 + n_tags + n_nodes,
                                fields.len()
                            ),
                        ));
                    }
                    let physical_tag = if n_tags > 0 {
                        Some(
                            fields[3]
                                .parse::<i32>()
                                .map_err(|_| syntax(ln, "bad physical tag"))?,
                        )
                    } else {
                        None
                    };
                    let node_ids: Vec<usize> = fields[3 + n_tags..]
                        .iter()
                        .map(|f| f.parse::<usize>().map_err(|_| syntax(ln, "bad node reference")))
                        .collect::<Result<_>>()?;
                    if type_code == 15 {
                        continue; // geometry vertices carry no interpolation
                    }
                    raw_elements.push((id, type_code, physical_tag, node_ids));
                }
                expect_section_end(&mut lines, "$EndElements")?;
            }
            _ if line.starts_with('$') && !line.starts_with("$End") => {
                // Skip unknown section ($PhysicalNames, $Periodic, ...).
                let end = format!("$End{}", &line[1..]);
                loop {
                    match lines.next_content() {
                        Some((_, l)) if l == end => break,
                        Some(_) => {}
                        None => return Err(syntax(0, format!("unterminated section {line}"))),
                    }
                }
            }
            _ => return Err(syntax(ln, format!("unexpected content {line:?}"))),
        }
    }

    if !seen_nodes {
        return Err(Error::MalformedHeader("missing $Nodes section".into()));
    }
    if !seen_elements {
        return Err(Error::MalformedHeader("missing $Elements section".into()));
    }

    let coord_by_id: HashMap<usize, [f64; 3]> = raw_nodes.iter().cloned().collect();
    for (eid, _, _, node_ids) in &raw_elements {
        for nid in node_ids {
            if !coord_by_id.contains_key(nid) {
                return Err(Error::DanglingNodeReference {
                    element: *eid,
                    node: *nid,
                });
            }
        }
    }

    // The mesh is 2-D as soon as any triangle or out-of-axis node appears.
    let has_triangles = raw_elements.iter().any(|(_, t, _, _)| *t == 2);
    let referenced: std::collections::HashSet<usize> = raw_elements
        .iter()
        .flat_map(|(_, _, _, ids)| ids.iter().copied())
        .collect();
    let planar = raw_nodes
        .iter()
        .filter(|(id, _)| referenced.contains(id))
        .all(|(_, c)| c[1] == 0.0);
    let spatial_dim = if has_triangles || !planar { 2 } else { 1 };

    let nodes: Vec<Node> = raw_nodes
        .iter()
        .filter(|(id, _)| referenced.contains(id))
        .map(|(id, c)| Node {
            id: *id,
            coords: c[..spatial_dim].to_vec(),
        })
        .collect();

    let elements: Vec<Element> = raw_elements
        .into_iter()
        .map(|(id, type_code, physical_tag, mut node_ids)| {
            let kind = match type_code {
                1 => ElementKind::Line2,
                _ => ElementKind::Tri3,
            };
            match kind {
                ElementKind::Line2 if spatial_dim == 1 => {
                    let x0 = coord_by_id[&node_ids[0]][0];
                    let x1 = coord_by_id[&node_ids[1]][0];
                    if x1 < x0 {
                        node_ids.swap(0, 1);
                    }
                }
                ElementKind::Tri3 => {
                    let c: Vec<[f64; 2]> = node_ids
                        .iter()
                        .map(|nid| [coord_by_id[nid][0], coord_by_id[nid][1]])
                        .collect();
                    let area = super::triangle_signed_area(&[c[0], c[1], c[2]]);
                    if area < 0.0 {
                        node_ids.swap(1, 2);
                    }
                }
                _ => {}
            }
            Element {
                id,
                kind,
                node_ids,
                physical_tag,
            }
        })
        .collect();

    Mesh::new(nodes, elements, spatial_dim)
}
