//! Tumor-gene CSV ingest: one row per observed mutation, grouped by tumor.

use std::collections::{BTreeMap, BTreeSet};

use finspace::discovery::GenotypeDataset;

use crate::error::CliError;

/// First-column names accepted beside `gene`: tumors, or pathways listed
/// in the same long format.
const GROUP_COLUMNS: [&str; 2] = ["tumor", "pathway"];

/// Parses `tumor,gene` rows. Events are sorted, genotypes keep the order in
/// which their first tumor appears, and repeated rows count once.
pub fn ingest_genotypes(text: &str, origin: &str) -> Result<GenotypeDataset, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .flexible(false)
        .from_reader(text.as_bytes());
    let header = reader
        .headers()
        .map_err(|e| CliError::parse(format!("{origin}:1"), e.to_string()))?
        .clone();
    let cols: Vec<String> = header.iter().map(str::to_ascii_lowercase).collect();
    if cols.len() != 2 || !GROUP_COLUMNS.contains(&cols[0].as_str()) || cols[1] != "gene" {
        return Err(CliError::parse(
            format!("{origin}:1"),
            format!("expected header `tumor,gene`, found `{}`", header.iter().collect::<Vec<_>>().join(",")),
        ));
    }
    let mut groups: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    let mut first_seen: Vec<String> = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            CliError::parse(format!("{origin}:{line}"), e.to_string())
        })?;
        let line = rec.position().map_or(0, |p| p.line());
        let (group, gene) = (&rec[0], &rec[1]);
        if group.is_empty() {
            return Err(CliError::parse(format!("{origin}:{line}"), format!("empty {} name", cols[0])));
        }
        if gene.is_empty() {
            return Err(CliError::parse(format!("{origin}:{line}"), "empty gene name"));
        }
        if !groups.contains_key(group) {
            first_seen.push(group.to_owned());
        }
        groups.entry(group.to_owned()).or_default().insert(gene.to_owned());
    }
    let events: Vec<&str> = groups
        .values()
        .flatten()
        .map(String::as_str)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let genotypes: Vec<(Vec<&str>, u64)> = first_seen
        .iter()
        .map(|g| (groups[g].iter().map(String::as_str).collect(), 1))
        .collect();
    Ok(GenotypeDataset::new(&events, &genotypes)?)
}
