# Package marker for the acquaintance modules
