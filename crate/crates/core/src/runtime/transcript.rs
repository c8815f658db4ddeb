use std::fmt;
use std::time::Duration;

use super::PartyId;

/// Communication record of one protocol run.
///
/// `bytes[from][to]` counts framed bytes (header included). A single party
/// only fills its own row; [`SessionTranscript::merge`] combines the three
/// views into the session total.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SessionTranscript {
    pub bytes: [[u64; 3]; 3],
    pub messages: [[u64; 3]; 3],
    /// Online rounds between P0 and P1.
    pub rounds: u64,
    pub wall: Duration,
}

impl SessionTranscript {
    pub fn merge<'a>(parts: impl IntoIterator<Item = &'a SessionTranscript>) -> Self {
        let mut out = SessionTranscript::default();
        for t in parts {
            for from in 0..3 {
                for to in 0..3 {
                    out.bytes[from][to] += t.bytes[from][to];
                    out.messages[from][to] += t.messages[from][to];
                }
            }
            out.rounds = out.rounds.max(t.rounds);
            out.wall = out.wall.max(t.wall);
        }
        out
    }

    pub fn total_bytes(&self) -> u64 {
        self.bytes.iter().flatten().sum()
    }

    pub fn total_messages(&self) -> u64 {
        self.messages.iter().flatten().sum()
    }

    /// Decimal megabytes.
    pub fn megabytes(&self) -> f64 {
        self.total_bytes() as f64 / 1e6
    }

    pub fn sent_by(&self, p: PartyId) -> u64 {
        self.bytes[p.index()].iter().sum()
    }

    pub fn received_by(&self, p: PartyId) -> u64 {
        self.bytes.iter().map(|row| row[p.index()]).sum()
    }

    /// Bytes in both directions between `a` and `b`.
    pub fn channel_bytes(&self, a: PartyId, b: PartyId) -> u64 {
        self.bytes[a.index()][b.index()] + self.bytes[b.index()][a.index()]
    }

    /// Byte and message counts, ignoring timing.
    pub fn volume(&self) -> ([[u64; 3]; 3], [[u64; 3]; 3], u64) {
        (self.bytes, self.messages, self.rounds)
    }
}

impl fmt::Display for SessionTranscript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} bytes in {} messages, {} rounds, {:.3}s",
            self.total_bytes(),
            self.total_messages(),
            self.rounds,
            self.wall.as_secs_f64()
        )?;
        for a in PartyId::ALL {
            for b in PartyId::ALL {
                if a < b {
                    write!(f, "; {a}<->{b}: {}", self.channel_bytes(a, b))?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merge_sums_rows_and_takes_max_rounds() {
        let mut a = SessionTranscript::default();
        a.bytes[0][1] = 10;
        a.messages[0][1] = 1;
        a.rounds = 3;
        let mut b = SessionTranscript::default();
        b.bytes[1][0] = 10;
        b.bytes[2][1] = 5;
        b.messages[1][0] = 1;
        b.rounds = 3;
        b.wall = Duration::from_millis(2);
        let m = SessionTranscript::merge([&a, &b]);
        assert_eq!(m.total_bytes(), 25);
        assert_eq!(m.total_messages(), 2);
        assert_eq!(m.rounds, 3);
        assert_eq!(m.received_by(PartyId::P1), 15);
        assert_eq!(m.received_by(PartyId::P2), 0);
        assert_eq!(m.channel_bytes(PartyId::P0, PartyId::P1), 20);
        assert_eq!(m.wall, Duration::from_millis(2));
    }
}
