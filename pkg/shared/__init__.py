# Shared components for the qspace tools
