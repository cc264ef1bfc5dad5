//! Event-data ingestion: parsing, block assignment, game/red-card state
//! derivation, chance-count panels and chance-composition extraction.
//!
//! Coordinates follow the source data's convention: the origin is the
//! center of the defended goal, `x` runs between the touch-lines
//! (`-136..=136`) and `y` runs up the pitch (`0..=420`). Locations are
//! always recorded from the attacking team's perspective, so no
//! rotation is ever needed.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::Read;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const PITCH_X_MIN: f64 = -136.0;
pub const PITCH_X_MAX: f64 = 136.0;
pub const PITCH_Y_MIN: f64 = 0.0;
pub const PITCH_Y_MAX: f64 = 420.0;

/// Number of 15-minute blocks in a match.
pub const BLOCKS: usize = 6;

/// A location on the pitch, origin at the center of the defended goal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PitchLocation {
    pub x: f64,
    pub y: f64,
}

impl PitchLocation {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !(PITCH_X_MIN..=PITCH_X_MAX).contains(&x) || !(PITCH_Y_MIN..=PITCH_Y_MAX).contains(&y) {
            return Err(Error::Domain(format!(
                "location ({x}, {y}) outside pitch bounds x in [-136,136], y in [0,420]"
            )));
        }
        Ok(PitchLocation { x, y })
    }

    /// Clamp a raw coordinate pair onto the pitch.
    pub fn clamped(x: f64, y: f64) -> Self {
        PitchLocation {
            x: x.clamp(PITCH_X_MIN, PITCH_X_MAX),
            y: y.clamp(PITCH_Y_MIN, PITCH_Y_MAX),
        }
    }
}

/// Signed offset from an assist location to its chance location.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeltaLocation {
    pub dx: f64,
    pub dy: f64,
}

impl DeltaLocation {
    pub fn between(assist: PitchLocation, chance: PitchLocation) -> Self {
        DeltaLocation { dx: chance.x - assist.x, dy: chance.y - assist.y }
    }
}

/// One of the six 15-minute blocks, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BlockIndex(u8);

impl BlockIndex {
    pub fn new(r: u8) -> Result<Self> {
        if (1..=BLOCKS as u8).contains(&r) {
            Ok(BlockIndex(r))
        } else {
            Err(Error::Domain(format!("block index {r} outside 1..=6")))
        }
    }

    /// 1-based block label.
    pub fn label(&self) -> u8 {
        self.0
    }

    /// 0-based index for dense storage.
    pub fn idx(&self) -> usize {
        self.0 as usize - 1
    }

    /// Nominal start of the block in minutes (stoppage time excluded).
    pub fn nominal_start(&self) -> f64 {
        15.0 * (self.0 as f64 - 1.0)
    }

    pub fn all() -> impl Iterator<Item = BlockIndex> {
        (1..=BLOCKS as u8).map(BlockIndex)
    }
}

impl fmt::Display for BlockIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Half {
    First,
    Second,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EventType {
    Goal,
    Chance,
    YellowCard,
    RedCard,
    Other,
}

impl EventType {
    /// Goals are chances for every purpose here (a goal is a converted
    /// chance); both carry composition data.
    pub fn is_chance(&self) -> bool {
        matches!(self, EventType::Goal | EventType::Chance)
    }

    fn parse(raw: &str) -> EventType {
        match raw.trim().to_ascii_lowercase().as_str() {
            "goal" => EventType::Goal,
            "chance" => EventType::Chance,
            "yellow card" | "yellowcard" | "yellow" => EventType::YellowCard,
            "red card" | "redcard" | "red" => EventType::RedCard,
            _ => EventType::Other,
        }
    }

    fn canonical(&self) -> &'static str {
        match self {
            EventType::Goal => "Goal",
            EventType::Chance => "Chance",
            EventType::YellowCard => "Yellow card",
            EventType::RedCard => "Red card",
            EventType::Other => "Other",
        }
    }
}

/// One row of the source data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EventRecord {
    pub fixture_id: String,
    pub date: NaiveDate,
    pub team_id: String,
    /// Decimal minutes into the match.
    pub minute: f64,
    pub half: Half,
    pub event_type: EventType,
    pub event_player: String,
    pub assist_player: Option<String>,
    pub assist_loc: Option<PitchLocation>,
    pub chance_loc: Option<PitchLocation>,
}

/// Player identity. A transferred player appears under a new team id and
/// is deliberately treated as a distinct player.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PlayerKey {
    pub team_id: String,
    pub player_id: String,
}

impl PlayerKey {
    pub fn new(team_id: impl Into<String>, player_id: impl Into<String>) -> Self {
        PlayerKey { team_id: team_id.into(), player_id: player_id.into() }
    }
}

impl fmt::Display for PlayerKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.team_id, self.player_id)
    }
}

/// A fully located chance with the players involved.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChanceObservation {
    pub fixture_id: String,
    pub team_id: String,
    pub block: BlockIndex,
    pub assist_player: PlayerKey,
    pub chance_player: PlayerKey,
    pub assist_loc: PitchLocation,
    pub delta: DeltaLocation,
}

impl ChanceObservation {
    /// The chance location reconstructed as assist + delta.
    pub fn chance_loc(&self) -> (f64, f64) {
        (self.assist_loc.x + self.delta.dx, self.assist_loc.y + self.delta.dy)
    }
}

/// Home/away assignment for a fixture.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fixture {
    pub fixture_id: String,
    pub date: NaiveDate,
    pub home_team: String,
    pub away_team: String,
}

/// One row of the per-(fixture, team, block) count panel.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockPanelRow {
    pub fixture_id: String,
    pub team_id: String,
    pub opponent_id: String,
    pub block: BlockIndex,
    pub is_home: bool,
    /// Chance count (goals included).
    pub n: u64,
    /// Game state at the start of the block, from this team's perspective.
    pub g: i64,
    /// Red-card state at the start of the block.
    pub r: i64,
}

/// The chance-count panel: 12 rows per fixture (2 teams x 6 blocks).
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct BlockPanel {
    pub rows: Vec<BlockPanelRow>,
}

// ---------------------------------------------------------------------------
// Parsing

/// Maps the canonical column names onto the source file's header names.
/// `None` means the canonical name itself is used. The `half` column is
/// optional in the source; every other column is mandatory.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct ColumnMap {
    pub fixture: Option<String>,
    pub date: Option<String>,
    pub team: Option<String>,
    pub time: Option<String>,
    pub half: Option<String>,
    pub event_type: Option<String>,
    pub event_player: Option<String>,
    pub assist_player: Option<String>,
    pub assist_x: Option<String>,
    pub assist_y: Option<String>,
    pub chance_x: Option<String>,
    pub chance_y: Option<String>,
    /// Field delimiter, a single byte; defaults to a comma.
    pub delimiter: Option<char>,
}

impl ColumnMap {
    fn name<'a>(&'a self, canonical: &'a str) -> &'a str {
        let over = match canonical {
            "fixture" => &self.fixture,
            "date" => &self.date,
            "team" => &self.team,
            "time" => &self.time,
            "half" => &self.half,
            "type" => &self.event_type,
            "event_player" => &self.event_player,
            "assist_player" => &self.assist_player,
            "assist_x" => &self.assist_x,
            "assist_y" => &self.assist_y,
            "chance_x" => &self.chance_x,
            "chance_y" => &self.chance_y,
            _ => &None,
        };
        over.as_deref().unwrap_or(canonical)
    }
}

/// A recoverable per-row parse failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowError {
    /// 1-based line number in the source (header is line 1).
    pub line: usize,
    pub message: String,
}

impl fmt::Display for RowError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

/// Result of parsing an event file: rows that failed to parse are
/// collected rather than aborting the run.
#[derive(Debug, Clone, Default)]
pub struct ParsedEvents {
    pub events: Vec<EventRecord>,
    pub row_errors: Vec<RowError>,
}

const MANDATORY: [&str; 11] = [
    "fixture",
    "date",
    "team",
    "time",
    "type",
    "event_player",
    "assist_player",
    "assist_x",
    "assist_y",
    "chance_x",
    "chance_y",
];

fn missing(cell: &str) -> bool {
    let t = cell.trim();
    t.is_empty() || t == "---"
}

/// Parse delimiter-separated event data with a header row.
///
/// Malformed cells produce a [`RowError`] for that row (collect and
/// report); a missing mandatory column is a fatal schema error. "---"
/// and empty cells are treated as absent.
pub fn parse_events<R: Read>(source: R, schema: &ColumnMap) -> Result<ParsedEvents> {
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(schema.delimiter.unwrap_or(',') as u8)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(source);

    let headers = reader
        .headers()
        .map_err(|e| Error::Schema(format!("cannot read header row: {e}")))?
        .clone();
    let mut col: BTreeMap<&str, usize> = BTreeMap::new();
    for canonical in MANDATORY {
        let name = schema.name(canonical);
        match headers.iter().position(|h| h == name) {
            Some(i) => {
                col.insert(canonical, i);
            }
            None => {
                return Err(Error::Schema(format!(
                    "mandatory column `{name}` (canonical `{canonical}`) not found in header"
                )))
            }
        }
    }
    // `half` is permitted to be absent; rows then fall back to the pure
    // minute rule during block assignment.
    let half_col = headers.iter().position(|h| h == schema.name("half"));

    let mut out = ParsedEvents::default();
    for (i, record) in reader.records().enumerate() {
        let line = i + 2; // header is line 1
        let record = match record {
            Ok(r) => r,
            Err(e) => {
                out.row_errors.push(RowError { line, message: format!("unreadable row: {e}") });
                continue;
            }
        };
        match parse_row(&record, &col, half_col) {
            Ok(ev) => out.events.push(ev),
            Err(message) => out.row_errors.push(RowError { line, message }),
        }
    }
    Ok(out)
}

fn parse_row(
    record: &csv::StringRecord,
    col: &BTreeMap<&str, usize>,
    half_col: Option<usize>,
) -> std::result::Result<EventRecord, String> {
    let cell = |name: &str| -> &str { record.get(col[name]).unwrap_or("") };

    let fixture_id = cell("fixture").to_string();
    if missing(&fixture_id) {
        return Err("missing fixture id".into());
    }
    let date = NaiveDate::parse_from_str(cell("date").trim(), "%Y-%m-%d")
        .map_err(|e| format!("bad date `{}`: {e}", cell("date")))?;
    let team_id = cell("team").to_string();
    if missing(&team_id) {
        return Err("missing team id".into());
    }
    let minute: f64 = cell("time")
        .trim()
        .parse()
        .map_err(|_| format!("bad time `{}`", cell("time")))?;
    if !minute.is_finite() || minute < 0.0 {
        return Err(format!("time {minute} must be a finite non-negative minute count"));
    }
    let half = match half_col.map(|i| record.get(i).unwrap_or("")) {
        None => Half::Unknown,
        Some(c) if missing(c) => Half::Unknown,
        Some(c) => match c.trim() {
            "1" => Half::First,
            "2" => Half::Second,
            other => return Err(format!("bad half `{other}` (expected 1 or 2)")),
        },
    };
    let event_type = EventType::parse(cell("type"));
    let event_player = cell("event_player").to_string();
    if missing(&event_player) {
        return Err("missing event player".into());
    }

    let opt_str = |name: &str| -> Option<String> {
        let c = cell(name);
        if missing(c) {
            None
        } else {
            Some(c.trim().to_string())
        }
    };
    let opt_num = |name: &str| -> std::result::Result<Option<f64>, String> {
        let c = cell(name);
        if missing(c) {
            Ok(None)
        } else {
            c.trim()
                .parse::<f64>()
                .map(Some)
                .map_err(|_| format!("bad numeric cell `{c}` in column {name}"))
        }
    };

    let assist_player = opt_str("assist_player");
    let loc = |xn: &str, yn: &str| -> std::result::Result<Option<PitchLocation>, String> {
        match (opt_num(xn)?, opt_num(yn)?) {
            (Some(x), Some(y)) => PitchLocation::new(x, y).map(Some).map_err(|e| e.to_string()),
            (None, None) => Ok(None),
            _ => Err(format!("columns {xn}/{yn} must both be present or both absent")),
        }
    };
    let assist_loc = loc("assist_x", "assist_y")?;
    let chance_loc = loc("chance_x", "chance_y")?;

    Ok(EventRecord {
        fixture_id,
        date,
        team_id,
        minute,
        half,
        event_type,
        event_player,
        assist_player,
        assist_loc,
        chance_loc,
    })
}

/// Canonical CSV header for event data.
pub const CANONICAL_HEADER: &str =
    "fixture,date,team,time,half,type,event_player,assist_player,assist_x,assist_y,chance_x,chance_y";

/// Serialize events to the canonical CSV layout. Parsing the output with
/// the default [`ColumnMap`] reproduces the records exactly.
pub fn write_events_csv(events: &[EventRecord]) -> String {
    let mut out = String::from(CANONICAL_HEADER);
    out.push('\n');
    for ev in events {
        let half = match ev.half {
            Half::First => "1",
            Half::Second => "2",
            Half::Unknown => "---",
        };
        let opt = |s: &Option<String>| s.clone().unwrap_or_else(|| "---".into());
        let num = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_else(|| "---".into());
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}\n",
            ev.fixture_id,
            ev.date.format("%Y-%m-%d"),
            ev.team_id,
            ev.minute,
            half,
            ev.event_type.canonical(),
            ev.event_player,
            opt(&ev.assist_player),
            num(ev.assist_loc.map(|l| l.x)),
            num(ev.assist_loc.map(|l| l.y)),
            num(ev.chance_loc.map(|l| l.x)),
            num(ev.chance_loc.map(|l| l.y)),
        ));
    }
    out
}

// ---------------------------------------------------------------------------
// Block assignment and state derivation

/// Assign a minute to its 15-minute block.
///
/// Block intervals are half-open `(15(r-1), 15r]`: a minute exactly on a
/// boundary belongs to the earlier block, and minute 0 belongs to `t1`.
/// Stoppage time folds into `t3` (first half, minute > 45) or `t6`
/// (second half or unknown half, minute > 90).
pub fn assign_block(minute: f64, half: Half) -> Result<BlockIndex> {
    if !minute.is_finite() || minute < 0.0 {
        return Err(Error::Domain(format!("minute {minute} must be finite and non-negative")));
    }
    if half == Half::First && minute > 45.0 {
        return BlockIndex::new(3);
    }
    if minute <= 0.0 {
        return BlockIndex::new(1);
    }
    let r = (minute / 15.0).ceil() as u64;
    BlockIndex::new(r.min(BLOCKS as u64) as u8)
}

fn fixture_team_ids(events: &[EventRecord], fixture_id: &str) -> Result<Vec<String>> {
    let teams: BTreeSet<&str> = events
        .iter()
        .filter(|e| e.fixture_id == fixture_id)
        .map(|e| e.team_id.as_str())
        .collect();
    if teams.len() > 2 {
        return Err(Error::DataIntegrity(format!(
            "fixture {fixture_id} has {} distinct team ids, expected at most 2",
            teams.len()
        )));
    }
    Ok(teams.into_iter().map(String::from).collect())
}

/// A signed event count difference at the start of a block: events of
/// `kind` assigned to strictly earlier blocks, own team minus opponent
/// (sign flipped for red cards by the caller).
fn state_at_block(
    events: &[EventRecord],
    fixture_id: &str,
    team_id: &str,
    block: BlockIndex,
    kind: EventType,
) -> Result<i64> {
    let teams = fixture_team_ids(events, fixture_id)?;
    if teams.len() == 2 && !teams.iter().any(|t| t == team_id) {
        return Err(Error::DataIntegrity(format!(
            "team {team_id} does not appear in fixture {fixture_id} (teams: {teams:?})"
        )));
    }
    let mut own = 0i64;
    let mut opp = 0i64;
    for ev in events.iter().filter(|e| e.fixture_id == fixture_id && e.event_type == kind) {
        let ev_block = assign_block(ev.minute, ev.half)?;
        if ev_block >= block {
            continue;
        }
        if ev.team_id == team_id {
            own += 1;
        } else {
            opp += 1;
        }
    }
    Ok(own - opp)
}

/// Game state (goal difference from this team's perspective) at the
/// start of `block`. Only goals in strictly earlier blocks count.
pub fn derive_game_state(
    events: &[EventRecord],
    fixture_id: &str,
    team_id: &str,
    block: BlockIndex,
) -> Result<i64> {
    state_at_block(events, fixture_id, team_id, block, EventType::Goal)
}

/// Red-card state at the start of `block`: an own red card contributes
/// -1, an opponent's +1.
pub fn derive_red_card_state(
    events: &[EventRecord],
    fixture_id: &str,
    team_id: &str,
    block: BlockIndex,
) -> Result<i64> {
    Ok(-state_at_block(events, fixture_id, team_id, block, EventType::RedCard)?)
}

/// Build the chance-count panel: 12 rows per fixture, chance counts per
/// (team, block), game/red-card state at block start and the home flag.
pub fn build_block_panel(events: &[EventRecord], fixtures: &[Fixture]) -> Result<BlockPanel> {
    let mut by_fixture: BTreeMap<&str, &Fixture> = BTreeMap::new();
    for f in fixtures {
        if f.home_team == f.away_team {
            return Err(Error::DataIntegrity(format!(
                "fixture {} lists the same team {} on both sides",
                f.fixture_id, f.home_team
            )));
        }
        by_fixture.insert(f.fixture_id.as_str(), f);
    }
    for ev in events {
        let Some(f) = by_fixture.get(ev.fixture_id.as_str()) else {
            return Err(Error::DataIntegrity(format!(
                "event references fixture {} absent from fixture metadata",
                ev.fixture_id
            )));
        };
        if ev.team_id != f.home_team && ev.team_id != f.away_team {
            return Err(Error::DataIntegrity(format!(
                "event team {} is not one of fixture {}'s teams ({}, {})",
                ev.team_id, ev.fixture_id, f.home_team, f.away_team
            )));
        }
    }

    // Chance counts per (fixture, team, block).
    let mut counts: BTreeMap<(&str, &str, BlockIndex), u64> = BTreeMap::new();
    for ev in events.iter().filter(|e| e.event_type.is_chance()) {
        let block = assign_block(ev.minute, ev.half)?;
        *counts.entry((ev.fixture_id.as_str(), ev.team_id.as_str(), block)).or_insert(0) += 1;
    }

    let mut rows = Vec::with_capacity(fixtures.len() * 2 * BLOCKS);
    for f in fixtures {
        for block in BlockIndex::all() {
            for (team, opponent, is_home) in [
                (&f.home_team, &f.away_team, true),
                (&f.away_team, &f.home_team, false),
            ] {
                rows.push(BlockPanelRow {
                    fixture_id: f.fixture_id.clone(),
                    team_id: team.clone(),
                    opponent_id: opponent.clone(),
                    block,
                    is_home,
                    n: counts
                        .get(&(f.fixture_id.as_str(), team.as_str(), block))
                        .copied()
                        .unwrap_or(0),
                    g: derive_game_state(events, &f.fixture_id, team, block)?,
                    r: derive_red_card_state(events, &f.fixture_id, team, block)?,
                });
            }
        }
    }
    Ok(BlockPanel { rows })
}

/// Extraction outcome: observations plus counts of skipped rows.
#[derive(Debug, Clone, Default)]
pub struct ExtractedChances {
    pub observations: Vec<ChanceObservation>,
    /// Chance events missing a location or an assist player.
    pub missing_location: usize,
    /// Chance events whose assist player appears to play for the
    /// opposing team (assumed away by the model; dropped with a warning).
    pub cross_team_assists: usize,
}

/// Extract one [`ChanceObservation`] per located chance event.
///
/// Chance events missing a location are excluded and counted rather
/// than failing the run. Assists that can be shown to come from the
/// opposing team (the assist player takes events for the other side in
/// the same fixture and never for this one) are excluded likewise.
pub fn extract_chances(events: &[EventRecord], fixtures: &[Fixture]) -> Result<ExtractedChances> {
    let fixture_ids: BTreeSet<&str> = fixtures.iter().map(|f| f.fixture_id.as_str()).collect();
    // Teams a player has taken events for, per fixture.
    let mut seen_for: BTreeMap<(&str, &str), BTreeSet<&str>> = BTreeMap::new();
    for ev in events {
        seen_for
            .entry((ev.fixture_id.as_str(), ev.event_player.as_str()))
            .or_default()
            .insert(ev.team_id.as_str());
    }

    let mut out = ExtractedChances::default();
    for ev in events.iter().filter(|e| e.event_type.is_chance()) {
        if !fixture_ids.contains(ev.fixture_id.as_str()) {
            return Err(Error::DataIntegrity(format!(
                "event references fixture {} absent from fixture metadata",
                ev.fixture_id
            )));
        }
        let (Some(assist_player), Some(assist_loc), Some(chance_loc)) =
            (&ev.assist_player, ev.assist_loc, ev.chance_loc)
        else {
            out.missing_location += 1;
            log::warn!(
                "chance event for team {} in fixture {} lacks assist/location data; skipped",
                ev.team_id,
                ev.fixture_id
            );
            continue;
        };
        if let Some(teams) = seen_for.get(&(ev.fixture_id.as_str(), assist_player.as_str())) {
            if !teams.contains(ev.team_id.as_str()) {
                out.cross_team_assists += 1;
                log::warn!(
                    "assist player {} appears to play against team {} in fixture {}; skipped",
                    assist_player,
                    ev.team_id,
                    ev.fixture_id
                );
                continue;
            }
        }
        out.observations.push(ChanceObservation {
            fixture_id: ev.fixture_id.clone(),
            team_id: ev.team_id.clone(),
            block: assign_block(ev.minute, ev.half)?,
            assist_player: PlayerKey::new(&ev.team_id, assist_player),
            chance_player: PlayerKey::new(&ev.team_id, &ev.event_player),
            assist_loc,
            delta: DeltaLocation::between(assist_loc, chance_loc),
        });
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Table emission (panel + chance tables as CSV / JSONL)

pub fn write_panel_csv(panel: &BlockPanel) -> String {
    let mut out = String::from("fixture,team,opponent,block,is_home,n,g,r\n");
    for row in &panel.rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            row.fixture_id,
            row.team_id,
            row.opponent_id,
            row.block.label(),
            row.is_home,
            row.n,
            row.g,
            row.r
        ));
    }
    out
}

pub fn write_panel_jsonl(panel: &BlockPanel) -> String {
    let mut out = String::new();
    for row in &panel.rows {
        out.push_str(&serde_json::to_string(row).expect("panel row serializes"));
        out.push('\n');
    }
    out
}

pub fn write_chances_csv(chances: &[ChanceObservation]) -> String {
    let mut out = String::from(
        "fixture,team,block,assist_player,chance_player,assist_x,assist_y,delta_x,delta_y\n",
    );
    for c in chances {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            c.fixture_id,
            c.team_id,
            c.block.label(),
            c.assist_player.player_id,
            c.chance_player.player_id,
            c.assist_loc.x,
            c.assist_loc.y,
            c.delta.dx,
            c.delta.dy
        ));
    }
    out
}

pub fn write_chances_jsonl(chances: &[ChanceObservation]) -> String {
    let mut out = String::new();
    for c in chances {
        out.push_str(&serde_json::to_string(c).expect("chance serializes"));
        out.push('\n');
    }
    out
}
