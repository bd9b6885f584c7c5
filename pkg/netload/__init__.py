# Shuffle-phase network load modeling app
