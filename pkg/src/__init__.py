# Main package initialization
