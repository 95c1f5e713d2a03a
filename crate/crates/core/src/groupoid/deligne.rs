use super::quiver::{MutationQuiver, PathWord, Presentation};
use super::GroupoidError;
use crate::fan::{chambers_of_arrangement, Arrangement};

/// Presents the groupoid of positive paths of a hyperplane arrangement: one
/// vertex per chamber, one arrow per ordered pair of adjacent chambers, and
/// one relation for each pair of distinct minimal galleries with common
/// endpoints.
pub fn deligne_groupoid(arr: &Arrangement) -> Result<Presentation, GroupoidError> {
    let decomposition = chambers_of_arrangement(arr)?;
    let quiver = MutationQuiver::from_decomposition(&decomposition)?;
    let mut relations = Vec::new();
    for from in quiver.vertices() {
        for to in quiver.vertices() {
            if from == to {
                continue;
            }
            let galleries = decomposition.minimal_galleries(from, to)?;
            for i in 0..galleries.len() {
                for j in i + 1..galleries.len() {
                    relations.push((
                        PathWord::positive(&galleries[i])?,
                        PathWord::positive(&galleries[j])?,
                    ));
                }
            }
        }
    }
    Ok(Presentation {
        generators: quiver.arrows().to_vec(),
        relations,
    })
}
