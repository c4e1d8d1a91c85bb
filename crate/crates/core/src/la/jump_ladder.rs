use crate::error::BuildError;
use crate::la::{floor_log2, impl_level_ancestor, JumpPointersLA, LadderLA, Strategy, Tally};
use crate::tree::{Depth, NodeId, Tree};

/// One jump pointer, then one ladder read.
///
/// Jumping `2^i` with `i = floor(log2 gap)` lands on a node `x` of height
/// greater than `2^i`, and `x`'s extended ladder reaches at least `height(x)`
/// nodes above `x` (or the root), which covers the residual gap `< 2^i`.
/// Space is the sum of both components.
pub struct JumpLadderLA<'t> {
    jumps: JumpPointersLA<'t>,
    ladders: LadderLA<'t>,
}

impl<'t> JumpLadderLA<'t> {
    pub fn build(tree: &'t Tree) -> Result<Self, BuildError> {
        Ok(JumpLadderLA {
            jumps: JumpPointersLA::build(tree)?,
            ladders: LadderLA::build(tree)?,
        })
    }

    pub fn tree(&self) -> &'t Tree {
        self.jumps.tree()
    }

    pub fn jumps(&self) -> &JumpPointersLA<'t> {
        &self.jumps
    }

    pub fn ladders(&self) -> &LadderLA<'t> {
        &self.ladders
    }

    #[inline]
    pub fn query_with<T: Tally>(&self, v: NodeId, d: Depth, tally: &mut T) -> Option<NodeId> {
        let depth = self.tree().depth(v);
        if d >= depth {
            return (d == depth).then_some(v);
        }
        let x = self.jumps.jump(v, floor_log2(depth - d));
        tally.jump();
        tally.ladder();
        Some(
            self.ladders
                .climb(x, d)
                .expect("extended ladder covers the residual gap"),
        )
    }

    pub fn space_bytes(&self) -> u64 {
        self.jumps.space_bytes() + self.ladders.space_bytes()
    }
}

impl_level_ancestor!(JumpLadderLA<'_>, Strategy::JumpLadder);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::la::{HopCounters, LevelAncestor};

    #[test]
    fn two_steps() {
        let path = Tree::path(8);
        let jl = JumpLadderLA::build(&path).unwrap();
        let mut hops = HopCounters::default();
        assert_eq!(jl.query_counted(7, 0, &mut hops), Ok(Some(0)));
        assert_eq!((hops.jumps, hops.ladder_hops), (1, 1));
        assert_eq!(jl.jumps().jump(7, 2), 3);

        let tree: Tree = "110010".parse().unwrap();
        let jl = JumpLadderLA::build(&tree).unwrap();
        assert_eq!(jl.jumps().jump(2, 1), 0);
        assert_eq!(jl.query(2, 0), Ok(Some(0)));

        let mut hops = HopCounters::default();
        assert_eq!(jl.query_counted(2, 2, &mut hops), Ok(Some(2)));
        assert_eq!(hops, HopCounters::default());
        assert_eq!(jl.query(2, 3), Ok(None));
        assert_eq!(
            jl.space_bytes(),
            jl.jumps().space_bytes() + jl.ladders().space_bytes()
        );
    }
}
