// placeholder, replaced when serialization lands
