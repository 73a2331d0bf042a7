# Report emission for cone_duality
