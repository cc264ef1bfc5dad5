//! Dense indexing of teams, rosters and observations.
//!
//! Parameter containers are plain vectors; this module owns the mapping
//! between opaque identifiers and their indices. Teams are sorted; each
//! team's roster is sorted; `(team, player)` pairs flatten to a global
//! "cell" index in team-major order. A player moving between teams gets
//! a distinct cell per team.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ingest::{BlockPanel, ChanceObservation, PlayerKey};
use crate::rate::PanelRow;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelIndex {
    teams: Vec<String>,
    rosters: Vec<Vec<String>>,
    /// Cumulative roster sizes; cell = offsets[team] + slot.
    offsets: Vec<usize>,
}

impl ModelIndex {
    pub fn new(mut teams: Vec<String>, mut rosters: Vec<Vec<String>>) -> Result<Self> {
        if teams.len() != rosters.len() {
            return Err(Error::Domain(format!(
                "{} teams but {} rosters",
                teams.len(),
                rosters.len()
            )));
        }
        let order: Vec<usize> = {
            let mut idx: Vec<usize> = (0..teams.len()).collect();
            idx.sort_by(|&a, &b| teams[a].cmp(&teams[b]));
            idx
        };
        let sorted_teams: Vec<String> = order.iter().map(|&i| teams[i].clone()).collect();
        let mut sorted_rosters: Vec<Vec<String>> =
            order.iter().map(|&i| std::mem::take(&mut rosters[i])).collect();
        teams.clear();
        for w in sorted_teams.windows(2) {
            if w[0] == w[1] {
                return Err(Error::Domain(format!("duplicate team id {}", w[0])));
            }
        }
        for roster in &mut sorted_rosters {
            roster.sort();
            roster.dedup();
        }
        let mut offsets = Vec::with_capacity(sorted_teams.len());
        let mut acc = 0usize;
        for roster in &sorted_rosters {
            offsets.push(acc);
            acc += roster.len();
        }
        Ok(ModelIndex { teams: sorted_teams, rosters: sorted_rosters, offsets })
    }

    /// Build the index from observed data: teams from the panel and the
    /// chances, rosters from every player seen in the chances.
    pub fn from_data(panel: &BlockPanel, chances: &[ChanceObservation]) -> Result<Self> {
        let mut teams: BTreeSet<&str> = BTreeSet::new();
        for row in &panel.rows {
            teams.insert(&row.team_id);
            teams.insert(&row.opponent_id);
        }
        for c in chances {
            teams.insert(&c.team_id);
        }
        let teams: Vec<String> = teams.into_iter().map(String::from).collect();
        let mut rosters: Vec<BTreeSet<&str>> = vec![BTreeSet::new(); teams.len()];
        for c in chances {
            let t = teams
                .binary_search_by(|probe| probe.as_str().cmp(&c.team_id))
                .map_err(|_| Error::Lookup(format!("team {} missing from panel", c.team_id)))?;
            rosters[t].insert(&c.assist_player.player_id);
            rosters[t].insert(&c.chance_player.player_id);
        }
        ModelIndex::new(
            teams,
            rosters.into_iter().map(|r| r.into_iter().map(String::from).collect()).collect(),
        )
    }

    pub fn n_teams(&self) -> usize {
        self.teams.len()
    }

    /// Total number of (team, player) cells.
    pub fn n_cells(&self) -> usize {
        self.offsets.last().map_or(0, |o| o + self.rosters.last().map_or(0, Vec::len))
    }

    pub fn teams(&self) -> &[String] {
        &self.teams
    }

    pub fn roster(&self, team: usize) -> &[String] {
        &self.rosters[team]
    }

    pub fn team_index(&self, team_id: &str) -> Result<usize> {
        self.teams
            .binary_search_by(|probe| probe.as_str().cmp(team_id))
            .map_err(|_| Error::Lookup(format!("unknown team id {team_id}")))
    }

    /// Roster slot of a player within their team.
    pub fn roster_slot(&self, team: usize, player_id: &str) -> Result<usize> {
        self.rosters[team]
            .binary_search_by(|probe| probe.as_str().cmp(player_id))
            .map_err(|_| {
                Error::Lookup(format!("player {player_id} not on team {}", self.teams[team]))
            })
    }

    pub fn cell(&self, team: usize, slot: usize) -> usize {
        self.offsets[team] + slot
    }

    pub fn cell_of_key(&self, key: &PlayerKey) -> Result<usize> {
        let t = self.team_index(&key.team_id)?;
        Ok(self.cell(t, self.roster_slot(t, &key.player_id)?))
    }

    pub fn key_of_cell(&self, cell: usize) -> PlayerKey {
        let team = match self.offsets.binary_search(&cell) {
            Ok(t) => {
                // Skip teams with empty rosters that share the offset.
                let mut t = t;
                while self.rosters[t].is_empty() {
                    t += 1;
                }
                t
            }
            Err(ins) => ins - 1,
        };
        PlayerKey::new(&self.teams[team], &self.rosters[team][cell - self.offsets[team]])
    }

    /// Translate panel rows to dense likelihood rows.
    pub fn index_panel(&self, panel: &BlockPanel) -> Result<Vec<PanelRow>> {
        panel
            .rows
            .iter()
            .map(|row| {
                Ok(PanelRow {
                    team: self.team_index(&row.team_id)?,
                    opponent: self.team_index(&row.opponent_id)?,
                    block: row.block.idx(),
                    is_home: row.is_home,
                    n: row.n,
                    g: row.g,
                    r: row.r,
                })
            })
            .collect()
    }

    /// Translate chance observations to dense form.
    pub fn index_chances(&self, chances: &[ChanceObservation]) -> Result<Vec<IndexedChance>> {
        chances
            .iter()
            .map(|c| {
                let team = self.team_index(&c.team_id)?;
                let assist_in_team = self.roster_slot(team, &c.assist_player.player_id)?;
                let chance_in_team = self.roster_slot(team, &c.chance_player.player_id)?;
                Ok(IndexedChance {
                    team,
                    block: c.block.idx(),
                    assist_in_team,
                    chance_in_team,
                    assist_cell: self.cell(team, assist_in_team),
                    chance_cell: self.cell(team, chance_in_team),
                    assist_loc: [c.assist_loc.x, c.assist_loc.y],
                    delta: [c.delta.dx, c.delta.dy],
                })
            })
            .collect()
    }
}

/// A chance observation in dense index form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IndexedChance {
    pub team: usize,
    /// 0-based block.
    pub block: usize,
    pub assist_in_team: usize,
    pub chance_in_team: usize,
    /// Global cell of the assisting player.
    pub assist_cell: usize,
    /// Global cell of the chance taker.
    pub chance_cell: usize,
    pub assist_loc: [f64; 2],
    pub delta: [f64; 2],
}
